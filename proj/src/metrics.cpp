#include "ehcdf/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "ehcdf/quadrature.hpp"

namespace ehcdf {

namespace {

double pow_p(double d, double p) { return p == 1.0 ? d : std::pow(d, p); }

void check_p(double p) {
  if (!(p >= 1.0) || std::isinf(p)) throw std::domain_error("wasserstein: need finite p >= 1");
}

}  // namespace

double wasserstein_step_step(const StepCdf& g, const StepCdf& h, double p) {
  check_p(p);
  const auto& xg = g.locations();
  const auto& cg = g.cumulative();
  const auto& xh = h.locations();
  const auto& ch = h.cumulative();
  std::size_t i = 0;
  std::size_t k = 0;
  double prev = 0.0;
  double sum = 0.0;
  while (i < xg.size() && k < xh.size()) {
    const double next = std::min(cg[i], ch[k]);
    const double width = next - prev;
    if (width > 0.0) sum += pow_p(std::fabs(xg[i] - xh[k]), p) * width;
    prev = next;
    if (cg[i] == next) ++i;
    if (ch[k] == next) ++k;
  }
  return std::pow(sum, 1.0 / p);
}

double wasserstein_step_cont(const StepCdf& g, const Distribution& f, double p) {
  check_p(p);
  const auto& x = g.locations();
  const auto& c = g.cumulative();
  QuadratureOptions opts;
  opts.rel_tol = 1e-10;
  opts.abs_tol = 1e-11;
  std::vector<double> breaks = f.quantile_breaks();
  const std::size_t fixed = breaks.size();
  double sum = 0.0;
  double prev = 0.0;
  for (std::size_t k = 0; k < x.size(); ++k) {
    const double xk = x[k];
    breaks.resize(fixed);
    breaks.push_back(std::clamp(f.cdf(xk), prev, c[k]));
    sum += integrate_unit(
        [&](UnitPoint t) { return pow_p(std::fabs(xk - f.quantile_at(t)), p); }, prev, c[k],
        opts, breaks);
    prev = c[k];
  }
  return std::pow(sum, 1.0 / p);
}

}  // namespace ehcdf

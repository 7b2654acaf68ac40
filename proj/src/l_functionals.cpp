#include "ehcdf/l_functionals.hpp"

#include <stdexcept>

namespace ehcdf {

double t_w(const StepCdf& g, const WeightFunction& w) {
  const auto& x = g.locations();
  const auto& c = g.cumulative();
  double s = 0.0;
  double prev = 0.0;
  for (std::size_t k = 0; k < x.size(); ++k) {
    s += x[k] * w.integral(prev, c[k]);
    prev = c[k];
  }
  return s;
}

double l_moment(const StepCdf& g, int r) {
  if (r < 1) throw std::domain_error("l_moment: need r >= 1");
  return t_w(g, WeightFunction::shifted_legendre(r - 1));
}

LRatios l_ratios(const StepCdf& g) {
  LRatios out;
  const double l2 = l_moment(g, 2);
  out.mad = 2.0 * l2;
  if (l2 > 0.0) {
    out.skew = l_moment(g, 3) / l2;
    out.kurt = l_moment(g, 4) / l2;
  }
  return out;
}

}  // namespace ehcdf

#include "ehcdf/hoeffding.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "ehcdf/special_fn.hpp"

namespace ehcdf {

namespace {

constexpr double kPmfCutoff = 1e-20;

void check_m(int m) {
  if (m < 1) throw std::domain_error("order m must be >= 1, got " + std::to_string(m));
}

// d[s] += dx * P(Bin(m, c) = s) for s in [0, m-1], pmf below kPmfCutoff dropped.
void add_pmf_window(std::vector<double>& d, double dx, int m, double c) {
  const double lc = std::log(c);
  const double lcc = std::log1p(-c);
  const int mode = std::min(m, static_cast<int>(std::floor((m + 1.0) * c)));
  const double log_pmf =
      log_binomial_coefficient(m, mode) + (mode > 0 ? mode * lc : 0.0) +
      (m - mode > 0 ? (m - mode) * lcc : 0.0);
  const double peak = std::exp(log_pmf);
  const double odds = c / (1.0 - c);

  double pmf = peak;
  for (int s = mode; s < m; ++s) {
    d[s] += dx * pmf;
    pmf *= (m - s) / (s + 1.0) * odds;
    if (pmf < kPmfCutoff) break;
  }
  pmf = peak;
  for (int s = mode; s > 0;) {
    pmf *= s / (m - s + 1.0) / odds;
    --s;
    if (pmf < kPmfCutoff) break;
    if (s < m) d[s] += dx * pmf;
  }
}

std::vector<double> concentration_breaks(int j, int m) {
  const BetaParams b(j, m);
  const double mean = b.mean();
  const double sd = std::sqrt(b.variance());
  std::vector<double> out;
  for (double k : {-6.0, -2.0, 0.0, 2.0, 6.0}) {
    const double t = mean + k * sd;
    if (t > 0.0 && t < 1.0) out.push_back(t);
  }
  return out;
}

double beta_moment(const std::function<double(UnitPoint)>& h, int j, int m,
                   const QuadratureOptions& opts, std::span<const double> extra = {}) {
  const BetaParams b(j, m);
  auto breaks = concentration_breaks(j, m);
  breaks.insert(breaks.end(), extra.begin(), extra.end());
  return integrate_unit([&](UnitPoint u) { return h(u) * beta_pdf(b, u.t, u.tc); }, 0.0, 1.0,
                        opts, breaks);
}

}  // namespace

ExpectedOrderStats expected_order_stats(std::span<const double> x, std::span<const double> c,
                                        int m) {
  check_m(m);
  if (x.empty() || x.size() != c.size()) {
    throw std::invalid_argument("expected_order_stats: need matching nonempty x and c");
  }
  std::vector<double> d(static_cast<std::size_t>(m), 0.0);
  for (std::size_t k = 0; k + 1 < x.size(); ++k) {
    const double dx = x[k + 1] - x[k];
    if (dx == 0.0) continue;
    if (dx < 0.0) throw std::invalid_argument("expected_order_stats: x not sorted");
    const double ck = c[k];
    if (ck <= 0.0) {
      d[0] += dx;
    } else if (ck < 1.0) {
      add_pmf_window(d, dx, m, ck);
    }
  }
  ExpectedOrderStats out;
  out.m = m;
  out.mu.resize(static_cast<std::size_t>(m));
  double acc = x[0];
  for (int j = 0; j < m; ++j) {
    acc += d[j];
    out.mu[j] = acc;
  }
  return out;
}

ExpectedOrderStats mu_hat(const Sample& s, int m) {
  const auto& x = s.sorted();
  const double n = static_cast<double>(x.size());
  std::vector<double> c(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) c[i] = static_cast<double>(i + 1) / n;
  return expected_order_stats(x, c, m);
}

ExpectedOrderStats mu_hat_direct(const Sample& s, int m) {
  check_m(m);
  const auto& x = s.sorted();
  const std::size_t n = x.size();
  ExpectedOrderStats out;
  out.m = m;
  out.mu.resize(static_cast<std::size_t>(m));
  double scale = 0.0;
  for (double v : x) scale = std::max(scale, std::fabs(v));
  for (int j = 1; j <= m; ++j) {
    const BetaParams b(j, m);
    double prev = 0.0;
    double acc = 0.0;
    for (std::size_t i = 1; i <= n; ++i) {
      const double cur = (i == n) ? 1.0 : beta_cdf(b, static_cast<double>(i) / n);
      acc += x[i - 1] * (cur - prev);
      prev = cur;
    }
    out.mu[j - 1] = acc;
    if (j > 1 && acc < out.mu[j - 2] - 1e-9 * std::max(1.0, scale)) {
      throw std::logic_error("mu_hat_direct: expected order statistics decrease at j = " +
                             std::to_string(j));
    }
  }
  return out;
}

ExpectedOrderStats expected_order_stats(const StepCdf& g, int m) {
  return expected_order_stats(g.locations(), g.cumulative(), m);
}

ExpectedOrderStats mu_true(const Distribution& f, int m) {
  check_m(m);
  ExpectedOrderStats out;
  out.m = m;
  out.mu.resize(static_cast<std::size_t>(m));
  const auto q = [&f](UnitPoint u) { return f.quantile_at(u); };
  const auto jumps = f.quantile_breaks();
  for (int j = 1; j <= m; ++j) {
    if (auto closed = f.expected_order_stat(j, m)) {
      out.mu[j - 1] = *closed;
      continue;
    }
    try {
      out.mu[j - 1] = beta_moment(q, j, m, {}, jumps);
    } catch (const QuadratureError& e) {
      throw QuadratureError("mu_true(" + f.name() + "), j=" + std::to_string(j) +
                                ", m=" + std::to_string(m) + ": " + e.what(),
                            e.lower(), e.upper());
    }
  }
  return out;
}

StepCdf hoeffding_cdf(const ExpectedOrderStats& mu) { return StepCdf::equal_mass(mu.mu); }

StepCdf hoeffding_cdf(const StepCdf& g, int m) {
  return hoeffding_cdf(expected_order_stats(g, m));
}

StepCdf ehcdf(const Sample& s, int m) { return hoeffding_cdf(mu_hat(s, m)); }

int m_from_gamma(std::size_t n, double gamma) {
  const double v = std::round(std::pow(static_cast<double>(n), gamma));
  return std::max(1, static_cast<int>(v));
}

MStepFunction::MStepFunction(std::vector<double> values) : values_(std::move(values)) {
  if (values_.empty()) throw std::invalid_argument("MStepFunction: no values");
}

double MStepFunction::operator()(double p) const {
  if (!(p > 0.0 && p <= 1.0)) throw std::domain_error("MStepFunction: p outside (0, 1]");
  const int m = this->m();
  const int j = std::clamp(static_cast<int>(std::ceil(p * m)), 1, m);
  return values_[j - 1];
}

double MStepFunction::lp_norm(double p) const {
  if (std::isinf(p)) {
    double best = 0.0;
    for (double v : values_) best = std::max(best, std::fabs(v));
    return best;
  }
  double s = 0.0;
  for (double v : values_) s += std::pow(std::fabs(v), p);
  return std::pow(s / m(), 1.0 / p);
}

MStepFunction i_m_apply(const std::function<double(UnitPoint)>& h, int m,
                        const QuadratureOptions& opts) {
  check_m(m);
  std::vector<double> v(static_cast<std::size_t>(m));
  for (int j = 1; j <= m; ++j) v[j - 1] = beta_moment(h, j, m, opts);
  return MStepFunction(std::move(v));
}

WeightFunction p_m_weight(const WeightFunction& w, int m) {
  check_m(m);
  std::vector<double> c(static_cast<std::size_t>(m));
  for (int j = 1; j <= m; ++j) {
    const double lo = static_cast<double>(j - 1) / m;
    const double hi = (j == m) ? 1.0 : static_cast<double>(j) / m;
    c[j - 1] = w.integral(lo, hi);
  }
  return WeightFunction::beta_mixture(std::move(c));
}

}  // namespace ehcdf

#include "ehcdf/kernel_cdf.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "ehcdf/quadrature.hpp"

namespace ehcdf {

namespace {

constexpr double kWindow = 10.0;
constexpr double kPad = 8.0;
// Pairs with (d/h)^2 beyond this contribute below double precision.
constexpr double kDeltaMax = 1000.0;

double phi_cdf(double z) { return 0.5 * std::erfc(-z / std::numbers::sqrt2); }

double type7_quantile(const std::vector<double>& x, double q) {
  const double h = (x.size() - 1) * q;
  const auto lo = static_cast<std::size_t>(std::floor(h));
  const std::size_t hi = std::min(lo + 1, x.size() - 1);
  return x[lo] + (h - lo) * (x[hi] - x[lo]);
}

// Estimates of int f''^2 (phi4) and -int f'''^2 (phi6) from Gaussian kernel
// derivatives, diagonal terms included.
struct PilotFunctionals {
  std::vector<double> d2;
  double n;

  double phi4(double h) const {
    double sum = 0.0;
    const double inv = 1.0 / (h * h);
    for (double v : d2) {
      const double delta = v * inv;
      if (delta >= kDeltaMax) continue;
      sum += std::exp(-0.5 * delta) * (delta * delta - 6.0 * delta + 3.0);
    }
    sum = 2.0 * sum + 3.0 * n;
    return sum / (n * (n - 1.0) * std::pow(h, 5.0) * std::sqrt(2.0 * std::numbers::pi));
  }

  double phi6(double h) const {
    double sum = 0.0;
    const double inv = 1.0 / (h * h);
    for (double v : d2) {
      const double delta = v * inv;
      if (delta >= kDeltaMax) continue;
      sum += std::exp(-0.5 * delta) *
             (delta * delta * delta - 15.0 * delta * delta + 45.0 * delta - 15.0);
    }
    sum = 2.0 * sum - 15.0 * n;
    return sum / (n * (n - 1.0) * std::pow(h, 7.0) * std::sqrt(2.0 * std::numbers::pi));
  }
};

}  // namespace

double sj_bandwidth(const Sample& s) {
  const auto& x = s.sorted();
  const std::size_t n = x.size();
  if (n < 3) throw std::invalid_argument("sj_bandwidth: need at least 3 observations");
  const double mean = s.mean();
  double ss = 0.0;
  for (double v : x) ss += (v - mean) * (v - mean);
  const double sd = std::sqrt(ss / (n - 1.0));
  const double iqr = type7_quantile(x, 0.75) - type7_quantile(x, 0.25);
  const double scale = std::min(sd, iqr / 1.349);
  if (!(scale > 0.0)) throw std::invalid_argument("sj_bandwidth: zero scale estimate");

  PilotFunctionals pilot;
  pilot.n = static_cast<double>(n);
  pilot.d2.reserve(n * (n - 1) / 2);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double d = x[j] - x[i];
      pilot.d2.push_back(d * d);
    }
  }

  const double nd = static_cast<double>(n);
  const double a = 1.24 * scale * std::pow(nd, -1.0 / 7.0);
  const double b = 1.23 * scale * std::pow(nd, -1.0 / 9.0);
  const double c1 = 1.0 / (2.0 * std::sqrt(std::numbers::pi) * nd);
  const double td = -pilot.phi6(b);
  if (!(td > 0.0) || !std::isfinite(td)) {
    throw std::runtime_error("sj_bandwidth: sample too sparse for the f''' functional");
  }
  const double alph2 = 1.357 * std::pow(pilot.phi4(a) / td, 1.0 / 7.0);
  if (!std::isfinite(alph2)) {
    throw std::runtime_error("sj_bandwidth: sample too sparse for the f'' functional");
  }
  auto fsd = [&](double h) {
    const double sdh = pilot.phi4(alph2 * std::pow(h, 5.0 / 7.0));
    if (!(sdh > 0.0)) return 1.0;
    return std::pow(c1 / sdh, 0.2) - h;
  };

  double lo = 1e-3 * scale;
  double hi = 1e3 * scale;
  const double flo = fsd(lo);
  const double fhi = fsd(hi);
  if ((flo > 0.0) == (fhi > 0.0)) {
    throw std::runtime_error("sj_bandwidth: root not bracketed");
  }
  const bool increasing = flo < 0.0;
  for (int it = 0; it < 200 && hi - lo > 1e-12 * hi; ++it) {
    const double mid = 0.5 * (lo + hi);
    if ((fsd(mid) < 0.0) == increasing) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

double ekcdf_eval(const Sample& s, double h, double x) {
  if (!(h > 0.0)) throw std::domain_error("ekcdf_eval: need h > 0");
  double sum = 0.0;
  for (double v : s.values()) sum += phi_cdf((x - v) / h);
  return sum / static_cast<double>(s.size());
}

KernelCdf::KernelCdf(const Sample& s, double h) : x_(s.sorted()), h_(h) {
  if (!(h > 0.0)) throw std::domain_error("KernelCdf: need h > 0");
}

double KernelCdf::operator()(double x) const {
  const auto first = std::lower_bound(x_.begin(), x_.end(), x - kWindow * h_);
  const auto last = std::upper_bound(first, x_.end(), x + kWindow * h_);
  double sum = static_cast<double>(first - x_.begin());
  for (auto it = first; it != last; ++it) sum += phi_cdf((x - *it) / h_);
  return sum / static_cast<double>(x_.size());
}

double ekcdf_lp_error(const KernelCdf& fhat, const Distribution& f, double p) {
  if (!(p >= 1.0)) throw std::domain_error("ekcdf_lp_error: need p >= 1");
  const auto& x = fhat.sorted();
  const double h = fhat.bandwidth();
  const Support sup = f.support();
  const auto atoms = f.atoms();
  double a = x.front() - kPad * h;
  double b = x.back() + kPad * h;
  if (std::isfinite(sup.lower)) a = std::min(a, sup.lower);
  if (std::isfinite(sup.upper)) b = std::max(b, sup.upper);

  std::vector<double> z(x.begin(), x.end());
  z.insert(z.end(), atoms.begin(), atoms.end());
  z.push_back(a);
  z.push_back(b);
  if (std::isfinite(sup.lower)) z.push_back(sup.lower);
  if (std::isfinite(sup.upper)) z.push_back(sup.upper);
  std::sort(z.begin(), z.end());
  z.erase(std::unique(z.begin(), z.end()), z.end());

  auto diff = [&](double t) { return std::fabs(fhat(t) - f.cdf(t)); };

  if (std::isinf(p)) {
    // Dense grid over the merged points, then golden-section refinement of
    // the largest local maxima.
    std::vector<double> grid;
    for (std::size_t k = 0; k + 1 < z.size(); ++k) {
      for (int r = 0; r < 4; ++r) grid.push_back(z[k] + (z[k + 1] - z[k]) * r / 4.0);
    }
    grid.push_back(z.back());
    std::vector<double> val(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) val[i] = diff(grid[i]);
    double best = *std::max_element(val.begin(), val.end());
    for (double t : atoms) {
      best = std::max(best, std::fabs(fhat(t) - f.cdf_left(t)));
      best = std::max(best, diff(t));
    }
    std::vector<std::size_t> peaks;
    for (std::size_t i = 1; i + 1 < grid.size(); ++i) {
      if (val[i] >= val[i - 1] && val[i] >= val[i + 1]) peaks.push_back(i);
    }
    std::sort(peaks.begin(), peaks.end(),
              [&](std::size_t l, std::size_t r) { return val[l] > val[r]; });
    if (peaks.size() > 8) peaks.resize(8);
    const double g = (std::sqrt(5.0) - 1.0) / 2.0;
    for (std::size_t i : peaks) {
      double lo = grid[i - 1];
      double hi = grid[i + 1];
      double c = hi - g * (hi - lo);
      double d = lo + g * (hi - lo);
      double fc = diff(c);
      double fd = diff(d);
      for (int it = 0; it < 60 && hi - lo > 1e-12 * std::max(1.0, std::fabs(hi)); ++it) {
        if (fc > fd) {
          hi = d;
          d = c;
          fd = fc;
          c = hi - g * (hi - lo);
          fc = diff(c);
        } else {
          lo = c;
          c = d;
          fc = fd;
          d = lo + g * (hi - lo);
          fd = diff(d);
        }
      }
      best = std::max({best, fc, fd});
    }
    return best;
  }

  double sum = 0.0;
  const double seg_tol = 1e-9 / static_cast<double>(z.size());
  for (std::size_t k = 0; k + 1 < z.size(); ++k) {
    const double u = z[k];
    const double v = z[k + 1];
    auto integrand = [&](double t) {
      const double ft = (t >= v) ? f.cdf_left(v) : f.cdf(t);
      const double d = std::fabs(fhat(t) - ft);
      return p == 1.0 ? d : std::pow(d, p);
    };
    sum += adaptive_simpson(integrand, u, v, seg_tol);
  }
  // Beyond [a, b] the kernel CDF is within 1e-15 of 0 or 1.
  if (!std::isfinite(sup.lower)) sum += lower_tail_lp(f, a, p);
  if (!std::isfinite(sup.upper)) sum += upper_tail_lp(f, b, p);
  return std::pow(sum, 1.0 / p);
}

}  // namespace ehcdf

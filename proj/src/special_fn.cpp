#include "ehcdf/special_fn.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

extern "C" double lgamma_r(double, int*);

namespace ehcdf {

namespace {

constexpr double kCfTolerance = 1e-14;
constexpr int kCfMaxIterations = 300;
constexpr double kTiny = 1e-300;

// Continued fraction for I_x(a, b); converges quickly for x < (a+1)/(a+b+2).
double incomplete_beta_cf(double a, double b, double x) {
  const double qab = a + b;
  const double qap = a + 1.0;
  const double qam = a - 1.0;
  double c = 1.0;
  double d = 1.0 - qab * x / qap;
  if (std::fabs(d) < kTiny) d = kTiny;
  d = 1.0 / d;
  double h = d;
  for (int it = 1; it <= kCfMaxIterations; ++it) {
    const double m2 = 2.0 * it;
    double aa = it * (b - it) * x / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    h *= d * c;
    aa = -(a + it) * (qab + it) * x / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::fabs(del - 1.0) < kCfTolerance) return h;
  }
  throw std::runtime_error("beta_cdf: continued fraction did not converge (a=" +
                           std::to_string(a) + ", b=" + std::to_string(b) +
                           ", x=" + std::to_string(x) + ")");
}

double log_beta_function(double a, double b) {
  return log_gamma(a) + log_gamma(b) - log_gamma(a + b);
}

// I_x(a, b) with 0 < x < 1 and xc = 1 - x.
double regularized_incomplete_beta(double a, double b, double x, double xc) {
  const double log_front =
      a * std::log(x) + b * std::log(xc) - log_beta_function(a, b);
  if (x < (a + 1.0) / (a + b + 2.0)) {
    return std::exp(log_front) * incomplete_beta_cf(a, b, x) / a;
  }
  return 1.0 - std::exp(log_front) * incomplete_beta_cf(b, a, xc) / b;
}

void check_unit(double x, const char* what) {
  if (!(x >= 0.0 && x <= 1.0)) {
    throw std::domain_error(std::string(what) + ": argument " + std::to_string(x) +
                            " outside [0, 1]");
  }
}

}  // namespace

BetaParams::BetaParams(int j, int m) : j_(j), m_(m) {
  if (m < 1 || j < 1 || j > m) {
    throw std::domain_error("BetaParams: need 1 <= j <= m, got j=" + std::to_string(j) +
                            ", m=" + std::to_string(m));
  }
}

double BetaParams::variance() const {
  const double m1 = m_ + 1.0;
  return static_cast<double>(j_) * (m_ - j_ + 1.0) / (m1 * m1 * (m_ + 2.0));
}

double log_gamma(double x) {
  int sign = 0;
  return lgamma_r(x, &sign);
}

double log_binomial_coefficient(int n, int k) {
  return log_gamma(n + 1.0) - log_gamma(k + 1.0) - log_gamma(n - k + 1.0);
}

double beta_cdf(const BetaParams& p, double x) { return beta_cdf(p, x, 1.0 - x); }

double beta_cdf(const BetaParams& p, double x, double xc) {
  check_unit(x, "beta_cdf");
  if (x == 0.0) return 0.0;
  if (xc <= 0.0) return 1.0;
  return regularized_incomplete_beta(p.alpha(), p.beta(), x, xc);
}

double beta_pdf(const BetaParams& p, double x) { return beta_pdf(p, x, 1.0 - x); }

double beta_pdf(const BetaParams& p, double x, double xc) {
  if (!(x > 0.0 && x <= 1.0) || !(xc > 0.0 && xc <= 1.0)) {
    throw std::domain_error("beta_pdf: argument " + std::to_string(x) + " outside (0, 1)");
  }
  const int j = p.j();
  const int m = p.m();
  const double log_pdf = std::log(static_cast<double>(m)) +
                         log_binomial_coefficient(m - 1, j - 1) +
                         (j - 1) * std::log(x) + (m - j) * std::log(xc);
  return std::exp(log_pdf);
}

double binomial_upper_tail(int m, int j, double x) {
  check_unit(x, "binomial_upper_tail");
  if (j <= 0) return 1.0;
  if (j > m) return 0.0;
  if (x == 0.0) return 0.0;
  if (x == 1.0) return 1.0;
  const double lx = std::log(x);
  const double lxc = std::log1p(-x);
  double sum = 0.0;
  for (int k = j; k <= m; ++k) {
    sum += std::exp(log_binomial_coefficient(m, k) + k * lx + (m - k) * lxc);
  }
  return sum;
}

double binomial_mean_abs_dev(int m, double t) {
  if (m < 1) throw std::domain_error("binomial_mean_abs_dev: m must be >= 1");
  check_unit(t, "binomial_mean_abs_dev");
  if (t == 0.0 || t == 1.0) return 0.0;
  const double mt = m * t;
  const double lt = std::log(t);
  const double ltc = std::log1p(-t);
  double sum = 0.0;
  for (int b = 0; b <= m; ++b) {
    const double pmf = std::exp(log_binomial_coefficient(m, b) + b * lt + (m - b) * ltc);
    sum += std::fabs(b - mt) * pmf;
  }
  return sum / m;
}

}  // namespace ehcdf

#include "ehcdf/distributions.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <limits>
#include <numbers>
#include <stdexcept>

#include <boost/math/distributions/students_t.hpp>
#include <boost/math/special_functions/beta.hpp>
#include <boost/math/special_functions/erf.hpp>
#include <boost/math/special_functions/gamma.hpp>

#include "ehcdf/special_fn.hpp"

namespace ehcdf {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::string format_name(const std::string& base, std::initializer_list<double> params) {
  std::string out = base + "(";
  bool first = true;
  for (double v : params) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%g", v);
    if (!first) out += ",";
    out += buf;
    first = false;
  }
  return out + ")";
}

void require(bool ok, const std::string& what) {
  if (!ok) throw std::invalid_argument(what);
}

double standard_gamma(double shape, Rng& rng) {
  if (shape < 1.0) {
    const double u = rng.uniform_open();
    return standard_gamma(shape + 1.0, rng) * std::pow(u, 1.0 / shape);
  }
  const double d = shape - 1.0 / 3.0;
  const double c = 1.0 / std::sqrt(9.0 * d);
  for (;;) {
    const double z = rng.normal();
    double v = 1.0 + c * z;
    if (v <= 0.0) continue;
    v = v * v * v;
    const double u = rng.uniform_open();
    if (std::log(u) < 0.5 * z * z + d * (1.0 - v + std::log(v))) return d * v;
  }
}

// inf{x : reached(x)} on [lo, hi] where reached is monotone; atoms are
// returned exactly when the infimum sits on one.
double generalized_inverse(const std::function<bool(double)>& reached,
                           const std::function<bool(double)>& reached_left, double lo,
                           double hi, const std::vector<double>& atoms) {
  if (reached(lo)) return lo;
  for (double z : atoms) {
    if (z <= lo || z > hi) continue;
    if (reached(z)) {
      if (!reached_left(z)) return z;
      hi = z;
      break;
    }
  }
  // Bisect down to adjacent doubles: roots near 0 of laws with unbounded
  // density need far more than an absolute 1e-12.
  for (int it = 0; it < 2200; ++it) {
    const double mid = lo + 0.5 * (hi - lo);
    if (mid <= lo || mid >= hi) break;
    if (reached(mid)) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return hi;
}

class Uniform final : public Distribution {
 public:
  Uniform(double a, double b) : a_(a), b_(b) {
    require(std::isfinite(a) && std::isfinite(b) && a < b, "uniform: need a < b");
  }
  std::string name() const override { return format_name("uniform", {a_, b_}); }
  double cdf(double x) const override {
    if (x <= a_) return 0.0;
    if (x >= b_) return 1.0;
    return (x - a_) / (b_ - a_);
  }
  double sf(double x) const override {
    if (x <= a_) return 1.0;
    if (x >= b_) return 0.0;
    return (b_ - x) / (b_ - a_);
  }
  double quantile(double p) const override {
    if (p <= 0.0) return a_;
    if (p >= 1.0) return b_;
    return a_ + p * (b_ - a_);
  }
  double quantile_upper(double q) const override {
    if (q <= 0.0) return b_;
    return b_ - q * (b_ - a_);
  }
  double pdf(double x) const override { return (x >= a_ && x <= b_) ? 1.0 / (b_ - a_) : 0.0; }
  double sample(Rng& rng) const override { return a_ + (b_ - a_) * rng.uniform(); }
  Support support() const override { return {a_, b_, SupportKind::continuous}; }
  double mean() const override { return 0.5 * (a_ + b_); }
  Q2Status q2_status() const override { return Q2Status::holds; }
  std::optional<double> expected_order_stat(int j, int m) const override {
    return a_ + (b_ - a_) * (static_cast<double>(j) / (m + 1.0));
  }

 private:
  double a_, b_;
};

class Normal final : public Distribution {
 public:
  Normal(double mu, double sigma) : mu_(mu), sigma_(sigma) {
    require(sigma > 0.0, "normal: need sd > 0");
  }
  std::string name() const override { return format_name("normal", {mu_, sigma_}); }
  double cdf(double x) const override {
    return 0.5 * std::erfc(-(x - mu_) / (sigma_ * std::numbers::sqrt2));
  }
  double sf(double x) const override {
    return 0.5 * std::erfc((x - mu_) / (sigma_ * std::numbers::sqrt2));
  }
  double quantile(double p) const override {
    if (p <= 0.0) return -kInf;
    if (p >= 1.0) return kInf;
    return mu_ - sigma_ * std::numbers::sqrt2 * boost::math::erfc_inv(2.0 * p);
  }
  double quantile_upper(double q) const override {
    if (q <= 0.0) return kInf;
    if (q >= 1.0) return -kInf;
    return mu_ + sigma_ * std::numbers::sqrt2 * boost::math::erfc_inv(2.0 * q);
  }
  double pdf(double x) const override {
    const double z = (x - mu_) / sigma_;
    return std::exp(-0.5 * z * z) / (sigma_ * std::sqrt(2.0 * std::numbers::pi));
  }
  double sample(Rng& rng) const override { return mu_ + sigma_ * rng.normal(); }
  Support support() const override { return {-kInf, kInf, SupportKind::continuous}; }
  double mean() const override { return mu_; }

 private:
  double mu_, sigma_;
};

class LogNormal final : public Distribution {
 public:
  LogNormal(double mu, double sigma) : base_(mu, sigma), mu_(mu), sigma_(sigma) {}
  std::string name() const override { return format_name("lognormal", {mu_, sigma_}); }
  double cdf(double x) const override { return x <= 0.0 ? 0.0 : base_.cdf(std::log(x)); }
  double sf(double x) const override { return x <= 0.0 ? 1.0 : base_.sf(std::log(x)); }
  double quantile(double p) const override { return std::exp(base_.quantile(p)); }
  double quantile_upper(double q) const override { return std::exp(base_.quantile_upper(q)); }
  double pdf(double x) const override { return x <= 0.0 ? 0.0 : base_.pdf(std::log(x)) / x; }
  double sample(Rng& rng) const override { return std::exp(base_.sample(rng)); }
  Support support() const override { return {0.0, kInf, SupportKind::continuous}; }
  double mean() const override { return std::exp(mu_ + 0.5 * sigma_ * sigma_); }

 private:
  Normal base_;
  double mu_, sigma_;
};

class Weibull final : public Distribution {
 public:
  Weibull(double k, double lambda) : k_(k), lambda_(lambda) {
    require(k > 0.0 && lambda > 0.0, "weibull: need shape > 0 and scale > 0");
  }
  std::string name() const override { return format_name("weibull", {k_, lambda_}); }
  double cdf(double x) const override {
    return x <= 0.0 ? 0.0 : -std::expm1(-std::pow(x / lambda_, k_));
  }
  double sf(double x) const override {
    return x <= 0.0 ? 1.0 : std::exp(-std::pow(x / lambda_, k_));
  }
  double quantile(double p) const override {
    if (p <= 0.0) return 0.0;
    if (p >= 1.0) return kInf;
    return lambda_ * std::pow(-std::log1p(-p), 1.0 / k_);
  }
  double quantile_upper(double q) const override {
    if (q <= 0.0) return kInf;
    return lambda_ * std::pow(-std::log(q), 1.0 / k_);
  }
  double pdf(double x) const override {
    if (x < 0.0) return 0.0;
    const double z = x / lambda_;
    return k_ / lambda_ * std::pow(z, k_ - 1.0) * std::exp(-std::pow(z, k_));
  }
  double sample(Rng& rng) const override { return quantile_upper(rng.uniform_open()); }
  Support support() const override { return {0.0, kInf, SupportKind::continuous}; }
  double mean() const override { return lambda_ * std::tgamma(1.0 + 1.0 / k_); }

 private:
  double k_, lambda_;
};

class Gamma final : public Distribution {
 public:
  Gamma(double shape, double scale) : shape_(shape), scale_(scale) {
    require(shape > 0.0 && scale > 0.0, "gamma: need shape > 0 and scale > 0");
  }
  std::string name() const override { return format_name("gamma", {shape_, scale_}); }
  double cdf(double x) const override {
    return x <= 0.0 ? 0.0 : boost::math::gamma_p(shape_, x / scale_);
  }
  double sf(double x) const override {
    return x <= 0.0 ? 1.0 : boost::math::gamma_q(shape_, x / scale_);
  }
  double quantile(double p) const override {
    if (p <= 0.0) return 0.0;
    if (p >= 1.0) return kInf;
    return scale_ * boost::math::gamma_p_inv(shape_, p);
  }
  double quantile_upper(double q) const override {
    if (q <= 0.0) return kInf;
    if (q >= 1.0) return 0.0;
    return scale_ * boost::math::gamma_q_inv(shape_, q);
  }
  double pdf(double x) const override {
    if (x <= 0.0) return 0.0;
    return boost::math::gamma_p_derivative(shape_, x / scale_) / scale_;
  }
  double sample(Rng& rng) const override { return scale_ * standard_gamma(shape_, rng); }
  Support support() const override { return {0.0, kInf, SupportKind::continuous}; }
  double mean() const override { return shape_ * scale_; }

 private:
  double shape_, scale_;
};

// F(x) = 1 - exp{a (1 - e^{sigma x})}, x >= 0.
class Gompertz final : public Distribution {
 public:
  Gompertz(double a, double sigma) : a_(a), sigma_(sigma) {
    require(a > 0.0 && sigma > 0.0, "gompertz: need a > 0 and sigma > 0");
  }
  std::string name() const override { return format_name("gompertz", {a_, sigma_}); }
  double cdf(double x) const override {
    return x <= 0.0 ? 0.0 : -std::expm1(-a_ * std::expm1(sigma_ * x));
  }
  double sf(double x) const override {
    return x <= 0.0 ? 1.0 : std::exp(-a_ * std::expm1(sigma_ * x));
  }
  double quantile(double p) const override {
    if (p <= 0.0) return 0.0;
    if (p >= 1.0) return kInf;
    return std::log1p(-std::log1p(-p) / a_) / sigma_;
  }
  double quantile_upper(double q) const override {
    if (q <= 0.0) return kInf;
    return std::log1p(-std::log(q) / a_) / sigma_;
  }
  double pdf(double x) const override {
    if (x < 0.0) return 0.0;
    return a_ * sigma_ * std::exp(sigma_ * x - a_ * std::expm1(sigma_ * x));
  }
  double sample(Rng& rng) const override { return quantile_upper(rng.uniform_open()); }
  Support support() const override { return {0.0, kInf, SupportKind::continuous}; }

 private:
  double a_, sigma_;
};

class BetaLaw final : public Distribution {
 public:
  BetaLaw(double a, double b) : a_(a), b_(b) {
    require(a > 0.0 && b > 0.0, "beta: need a > 0 and b > 0");
  }
  std::string name() const override { return format_name("beta", {a_, b_}); }
  double cdf(double x) const override {
    if (x <= 0.0) return 0.0;
    if (x >= 1.0) return 1.0;
    return boost::math::ibeta(a_, b_, x);
  }
  double sf(double x) const override {
    if (x <= 0.0) return 1.0;
    if (x >= 1.0) return 0.0;
    return boost::math::ibetac(a_, b_, x);
  }
  double quantile(double p) const override {
    if (p <= 0.0) return 0.0;
    if (p >= 1.0) return 1.0;
    return boost::math::ibeta_inv(a_, b_, p);
  }
  double quantile_upper(double q) const override {
    if (q <= 0.0) return 1.0;
    if (q >= 1.0) return 0.0;
    return boost::math::ibetac_inv(a_, b_, q);
  }
  double pdf(double x) const override {
    if (x <= 0.0 || x >= 1.0) return 0.0;
    return boost::math::ibeta_derivative(a_, b_, x);
  }
  double sample(Rng& rng) const override {
    const double x = standard_gamma(a_, rng);
    const double y = standard_gamma(b_, rng);
    return x / (x + y);
  }
  Support support() const override { return {0.0, 1.0, SupportKind::continuous}; }
  double mean() const override { return a_ / (a_ + b_); }
  Q2Status q2_status() const override { return Q2Status::holds; }

 private:
  double a_, b_;
};

class StudentT final : public Distribution {
 public:
  explicit StudentT(double nu) : nu_(nu), law_(nu > 1.0 ? nu : 2.0) {
    require(nu > 1.0, "student_t: need nu > 1 (finite mean)");
  }
  std::string name() const override { return format_name("student_t", {nu_}); }
  double cdf(double x) const override {
    if (std::isinf(x)) return x > 0 ? 1.0 : 0.0;
    if (nu_ == 2.0) return x <= 0.0 ? t2_tail(-x) : 1.0 - t2_tail(x);
    return boost::math::cdf(law_, x);
  }
  double sf(double x) const override { return cdf(-x); }
  double quantile(double p) const override {
    if (p <= 0.0) return -kInf;
    if (p >= 1.0) return kInf;
    if (nu_ == 2.0) return (2.0 * p - 1.0) / std::sqrt(2.0 * p * (1.0 - p));
    if (p > 0.5) return -quantile_upper_raw(1.0 - p);
    return boost::math::quantile(law_, p);
  }
  double quantile_upper(double q) const override {
    if (q <= 0.0) return kInf;
    if (q >= 1.0) return -kInf;
    if (nu_ == 2.0) return (1.0 - 2.0 * q) / std::sqrt(2.0 * q * (1.0 - q));
    return -quantile_upper_raw(q);
  }
  double pdf(double x) const override {
    if (nu_ == 2.0) return std::pow(2.0 + x * x, -1.5);
    return boost::math::pdf(law_, x);
  }
  double sample(Rng& rng) const override {
    if (nu_ == 2.0) return quantile(rng.uniform_open());
    const double z = rng.normal();
    const double g = 2.0 * standard_gamma(0.5 * nu_, rng);
    return z / std::sqrt(g / nu_);
  }
  Support support() const override { return {-kInf, kInf, SupportKind::continuous}; }
  double mean() const override { return 0.0; }

 private:
  // P(T <= -x) for x >= 0 with nu = 2, free of cancellation.
  static double t2_tail(double x) {
    const double r = std::sqrt(2.0 + x * x);
    return 1.0 / (r * (r + x));
  }
  double quantile_upper_raw(double q) const { return boost::math::quantile(law_, q); }

  double nu_;
  boost::math::students_t_distribution<double> law_;
};

class Logistic final : public Distribution {
 public:
  Logistic(double loc, double scale) : loc_(loc), scale_(scale) {
    require(scale > 0.0, "logistic: need scale > 0");
  }
  std::string name() const override { return format_name("logistic", {loc_, scale_}); }
  double cdf(double x) const override { return 1.0 / (1.0 + std::exp(-(x - loc_) / scale_)); }
  double sf(double x) const override { return 1.0 / (1.0 + std::exp((x - loc_) / scale_)); }
  double quantile(double p) const override {
    if (p <= 0.0) return -kInf;
    if (p >= 1.0) return kInf;
    return loc_ + scale_ * (std::log(p) - std::log1p(-p));
  }
  double quantile_upper(double q) const override {
    if (q <= 0.0) return kInf;
    if (q >= 1.0) return -kInf;
    return loc_ + scale_ * (std::log1p(-q) - std::log(q));
  }
  double pdf(double x) const override {
    const double e = std::exp(-std::fabs(x - loc_) / scale_);
    return e / (scale_ * (1.0 + e) * (1.0 + e));
  }
  double sample(Rng& rng) const override { return quantile(rng.uniform_open()); }
  Support support() const override { return {-kInf, kInf, SupportKind::continuous}; }
  double mean() const override { return loc_; }

 private:
  double loc_, scale_;
};

class Binomial final : public Distribution {
 public:
  Binomial(double k, double pi) : pi_(pi) {
    require(k >= 1.0 && k == std::floor(k) && k <= 1e6, "binomial: need integer k >= 1");
    require(pi > 0.0 && pi < 1.0, "binomial: need 0 < pi < 1");
    k_ = static_cast<int>(k);
    std::vector<double> pmf(k_ + 1);
    for (int i = 0; i <= k_; ++i) {
      if (k_ <= 60) {
        double c = 1.0;
        for (int r = 1; r <= i; ++r) c = c * (k_ - i + r) / r;
        pmf[i] = c * std::pow(pi, i) * std::pow(1.0 - pi, k_ - i);
      } else {
        pmf[i] = std::exp(log_binomial_coefficient(k_, i) + i * std::log(pi) +
                          (k_ - i) * std::log1p(-pi));
      }
    }
    cum_.resize(k_ + 1);
    upper_.resize(k_ + 1);
    double s = 0.0;
    for (int i = 0; i <= k_; ++i) cum_[i] = (s += pmf[i]);
    cum_[k_] = 1.0;
    s = 0.0;
    for (int i = k_; i >= 0; --i) {
      upper_[i] = s;
      s += pmf[i];
    }
  }
  std::string name() const override { return format_name("binomial", {double(k_), pi_}); }
  double cdf(double x) const override {
    if (x < 0.0) return 0.0;
    if (x >= k_) return 1.0;
    return cum_[static_cast<int>(std::floor(x))];
  }
  double cdf_left(double x) const override {
    if (x <= 0.0) return 0.0;
    if (x > k_) return 1.0;
    return cum_[static_cast<int>(std::ceil(x)) - 1];
  }
  double sf(double x) const override {
    if (x < 0.0) return 1.0;
    if (x >= k_) return 0.0;
    return upper_[static_cast<int>(std::floor(x))];
  }
  double quantile(double p) const override {
    if (p <= 0.0) return 0.0;
    return static_cast<double>(std::lower_bound(cum_.begin(), cum_.end(), p) - cum_.begin());
  }
  double quantile_upper(double q) const override {
    for (int i = 0; i <= k_; ++i) {
      if (upper_[i] <= q) return i;
    }
    return k_;
  }
  bool has_density() const override { return false; }
  double pdf(double) const override {
    throw std::logic_error("binomial has no Lebesgue density");
  }
  double sample(Rng& rng) const override { return quantile(rng.uniform_open()); }
  Support support() const override { return {0.0, double(k_), SupportKind::discrete}; }
  std::vector<double> atoms() const override {
    std::vector<double> out(k_ + 1);
    for (int i = 0; i <= k_; ++i) out[i] = i;
    return out;
  }
  double mean() const override { return k_ * pi_; }

 private:
  int k_ = 0;
  double pi_;
  std::vector<double> cum_;
  std::vector<double> upper_;
};

class Mixture final : public Distribution {
 public:
  Mixture(DistributionPtr a, DistributionPtr b) : a_(std::move(a)), b_(std::move(b)) {
    require(a_ && b_, "mixture: null component");
    auto atoms_a = a_->atoms();
    auto atoms_b = b_->atoms();
    atoms_.reserve(atoms_a.size() + atoms_b.size());
    std::merge(atoms_a.begin(), atoms_a.end(), atoms_b.begin(), atoms_b.end(),
               std::back_inserter(atoms_));
    atoms_.erase(std::unique(atoms_.begin(), atoms_.end()), atoms_.end());
  }
  std::string name() const override {
    return "mixture(" + a_->name() + "," + b_->name() + ")";
  }
  double cdf(double x) const override { return 0.5 * (a_->cdf(x) + b_->cdf(x)); }
  double cdf_left(double x) const override {
    return 0.5 * (a_->cdf_left(x) + b_->cdf_left(x));
  }
  double sf(double x) const override { return 0.5 * (a_->sf(x) + b_->sf(x)); }
  double quantile(double p) const override {
    const Support s = support();
    if (p <= 0.0) return s.lower;
    if (p >= 1.0) return s.upper;
    const double qa = a_->quantile(p);
    const double qb = b_->quantile(p);
    return generalized_inverse([&](double x) { return cdf(x) >= p; },
                               [&](double x) { return cdf_left(x) >= p; },
                               std::min(qa, qb), std::max(qa, qb), atoms_);
  }
  double quantile_upper(double q) const override {
    if (q >= 0.5) return quantile(1.0 - q);
    if (q <= 0.0) return support().upper;
    const double qa = a_->quantile_upper(q);
    const double qb = b_->quantile_upper(q);
    return generalized_inverse([&](double x) { return sf(x) <= q; },
                               [&](double x) { return 1.0 - cdf_left(x) <= q; },
                               std::min(qa, qb), std::max(qa, qb), atoms_);
  }
  bool has_density() const override { return a_->has_density() && b_->has_density(); }
  double pdf(double x) const override { return 0.5 * (a_->pdf(x) + b_->pdf(x)); }
  double sample(Rng& rng) const override {
    return rng.uniform() < 0.5 ? a_->sample(rng) : b_->sample(rng);
  }
  Support support() const override {
    const Support sa = a_->support();
    const Support sb = b_->support();
    SupportKind kind = SupportKind::mixed;
    if (sa.kind == sb.kind && sa.kind != SupportKind::mixed) kind = sa.kind;
    return {std::min(sa.lower, sb.lower), std::max(sa.upper, sb.upper), kind};
  }
  std::vector<double> atoms() const override { return atoms_; }
  double mean() const override { return 0.5 * (a_->mean() + b_->mean()); }
  std::vector<double> kinks() const override {
    auto out = a_->kinks();
    const auto kb = b_->kinks();
    out.insert(out.end(), kb.begin(), kb.end());
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
  }
  Q2Status q2_status() const override {
    const Q2Status qa = a_->q2_status();
    const Q2Status qb = b_->q2_status();
    if (qa == Q2Status::fails || qb == Q2Status::fails) return Q2Status::fails;
    return Q2Status::unknown;
  }

 private:
  DistributionPtr a_;
  DistributionPtr b_;
  std::vector<double> atoms_;
};

class Parser {
 public:
  explicit Parser(const std::string& text) : s_(text) {}

  DistributionPtr parse() {
    auto d = parse_dist();
    skip_ws();
    if (pos_ != s_.size()) fail("trailing characters");
    return d;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw std::invalid_argument("distribution \"" + s_ + "\": " + what + " at position " +
                                std::to_string(pos_));
  }
  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  void expect(char c) {
    skip_ws();
    if (pos_ >= s_.size() || s_[pos_] != c) fail(std::string("expected '") + c + "'");
    ++pos_;
  }
  bool peek_alpha() {
    skip_ws();
    return pos_ < s_.size() && std::isalpha(static_cast<unsigned char>(s_[pos_]));
  }
  std::string identifier() {
    skip_ws();
    const std::size_t start = pos_;
    while (pos_ < s_.size() &&
           (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) {
      ++pos_;
    }
    if (start == pos_) fail("expected a name");
    std::string id = s_.substr(start, pos_ - start);
    std::transform(id.begin(), id.end(), id.begin(),
                   [](unsigned char c) { return std::tolower(c); });
    return id;
  }
  double number() {
    skip_ws();
    const char* begin = s_.c_str() + pos_;
    char* end = nullptr;
    const double v = std::strtod(begin, &end);
    if (end == begin) fail("expected a number");
    pos_ += static_cast<std::size_t>(end - begin);
    return v;
  }
  DistributionPtr parse_dist() {
    const std::string id = identifier();
    expect('(');
    if (id == "mixture") {
      auto a = parse_dist();
      expect(',');
      auto b = parse_dist();
      expect(')');
      return make_mixture(std::move(a), std::move(b));
    }
    std::vector<double> params;
    skip_ws();
    if (pos_ < s_.size() && s_[pos_] != ')') {
      params.push_back(number());
      skip_ws();
      while (pos_ < s_.size() && s_[pos_] == ',') {
        ++pos_;
        params.push_back(number());
        skip_ws();
      }
    }
    expect(')');
    return catalog_lookup(id, params);
  }

  std::string s_;
  std::size_t pos_ = 0;
};

}  // namespace

double Distribution::mean() const {
  QuadratureOptions opts;
  opts.rel_tol = 1e-10;
  const auto breaks = quantile_breaks();
  return integrate_unit([this](UnitPoint u) { return quantile_at(u); }, 0.0, 1.0, opts, breaks);
}

std::vector<double> Distribution::kinks() const {
  std::vector<double> out = atoms();
  const Support s = support();
  if (std::isfinite(s.lower)) out.push_back(s.lower);
  if (std::isfinite(s.upper)) out.push_back(s.upper);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<double> Distribution::quantile_breaks() const {
  std::vector<double> out;
  for (double z : kinks()) {
    for (double v : {cdf_left(z), cdf(z)}) {
      if (v > 0.0 && v < 1.0) out.push_back(v);
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

DistributionPtr catalog_lookup(const std::string& name, const std::vector<double>& params) {
  auto need = [&](std::size_t count) {
    if (params.size() != count) {
      throw std::invalid_argument(name + ": expected " + std::to_string(count) +
                                  " parameters, got " + std::to_string(params.size()));
    }
  };
  if (name == "uniform") {
    need(2);
    return std::make_shared<Uniform>(params[0], params[1]);
  }
  if (name == "normal") {
    need(2);
    return std::make_shared<Normal>(params[0], params[1]);
  }
  if (name == "lognormal") {
    need(2);
    return std::make_shared<LogNormal>(params[0], params[1]);
  }
  if (name == "weibull") {
    need(2);
    return std::make_shared<Weibull>(params[0], params[1]);
  }
  if (name == "gamma") {
    need(2);
    return std::make_shared<Gamma>(params[0], params[1]);
  }
  if (name == "exponential") {
    need(1);
    require(params[0] > 0.0, "exponential: need rate > 0");
    return std::make_shared<Weibull>(1.0, 1.0 / params[0]);
  }
  if (name == "gompertz") {
    need(2);
    return std::make_shared<Gompertz>(params[0], params[1]);
  }
  if (name == "beta") {
    need(2);
    return std::make_shared<BetaLaw>(params[0], params[1]);
  }
  if (name == "student_t" || name == "t") {
    need(1);
    return std::make_shared<StudentT>(params[0]);
  }
  if (name == "logistic") {
    need(2);
    return std::make_shared<Logistic>(params[0], params[1]);
  }
  if (name == "binomial") {
    need(2);
    return std::make_shared<Binomial>(params[0], params[1]);
  }
  throw std::invalid_argument("unknown distribution \"" + name + "\"");
}

DistributionPtr make_mixture(DistributionPtr a, DistributionPtr b) {
  return std::make_shared<Mixture>(std::move(a), std::move(b));
}

DistributionPtr parse_distribution(const std::string& text) { return Parser(text).parse(); }

}  // namespace ehcdf

#ifndef EHCDF_DISTRIBUTIONS_HPP
#define EHCDF_DISTRIBUTIONS_HPP

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "ehcdf/quadrature.hpp"
#include "ehcdf/rng.hpp"

namespace ehcdf {

enum class SupportKind { continuous, discrete, mixed };

struct Support {
  double lower;  // may be -inf
  double upper;  // may be +inf
  SupportKind kind;
};

/// Whether the law satisfies the square-integrability condition
/// int u(1-u) q(u)^2 du < inf on its quantile density q = 1/f(Q).
enum class Q2Status { holds, fails, unknown };

/// A benchmark law. Quantile is the left-continuous generalized inverse
/// inf{x : F(x) >= p}. Implementations are immutable.
class Distribution {
 public:
  virtual ~Distribution() = default;

  virtual std::string name() const = 0;
  virtual double cdf(double x) const = 0;
  /// P(X < x).
  virtual double cdf_left(double x) const { return cdf(x); }
  /// P(X > x), accurate in the upper tail.
  virtual double sf(double x) const { return 1.0 - cdf(x); }
  virtual double quantile(double p) const = 0;
  /// Q(1 - q) for q in [0, 1), accurate for tiny q.
  virtual double quantile_upper(double q) const { return quantile(1.0 - q); }
  virtual bool has_density() const { return true; }
  /// Throws std::logic_error when has_density() is false.
  virtual double pdf(double x) const = 0;
  virtual double sample(Rng& rng) const = 0;
  virtual Support support() const = 0;
  /// Locations carrying positive probability, ascending.
  virtual std::vector<double> atoms() const { return {}; }
  virtual double mean() const;
  /// Points where F is not smooth, ascending: atoms, finite support edges
  /// and, for mixtures, the edges of every component.
  virtual std::vector<double> kinks() const;
  /// F(z-) and F(z) at every kink, restricted to (0, 1): the levels where Q
  /// jumps or turns nearly vertical. Quantile-domain integrals cut there.
  std::vector<double> quantile_breaks() const;
  virtual Q2Status q2_status() const { return Q2Status::fails; }
  /// E X_{j:m} when a closed form is known.
  virtual std::optional<double> expected_order_stat(int, int) const { return std::nullopt; }

  double quantile_at(UnitPoint u) const {
    return u.t <= 0.5 ? quantile(u.t) : quantile_upper(u.tc);
  }
};

using DistributionPtr = std::shared_ptr<const Distribution>;

/// Catalog names and parameter order:
///   uniform(a, b)        normal(mean, sd)       lognormal(mu, sigma)
///   weibull(shape, scale) gamma(shape, scale)   exponential(rate)
///   gompertz(a, sigma)   beta(a, b)             student_t(nu)   (nu > 1)
///   logistic(loc, scale) binomial(k, pi)
/// Throws std::invalid_argument for unknown names or invalid parameters.
DistributionPtr catalog_lookup(const std::string& name, const std::vector<double>& params);

/// Equally weighted two-component mixture.
DistributionPtr make_mixture(DistributionPtr a, DistributionPtr b);

/// Parses "normal(0,1)", "t(2)" or "mixture(normal(-5,1),weibull(0.5,1))".
DistributionPtr parse_distribution(const std::string& text);

}  // namespace ehcdf

#endif  // EHCDF_DISTRIBUTIONS_HPP

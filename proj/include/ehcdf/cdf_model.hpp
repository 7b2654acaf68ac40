#ifndef EHCDF_CDF_MODEL_HPP
#define EHCDF_CDF_MODEL_HPP

#include <iosfwd>
#include <limits>
#include <vector>

#include "ehcdf/distributions.hpp"

namespace ehcdf {

/// Raw observations plus their order statistics.
class Sample {
 public:
  /// Throws std::invalid_argument when empty or when a value is not finite.
  explicit Sample(std::vector<double> values);

  std::size_t size() const { return values_.size(); }
  const std::vector<double>& values() const { return values_; }
  const std::vector<double>& sorted() const { return sorted_; }
  double mean() const;

 private:
  std::vector<double> values_;
  std::vector<double> sorted_;
};

/// Discrete CDF with strictly increasing jump locations.
class StepCdf {
 public:
  /// Sorts, merges bitwise-equal locations and drops zero masses. Masses must
  /// be nonnegative and sum to 1 within 1e-12; the last cumulative is set to 1.
  StepCdf(std::vector<double> locations, std::vector<double> masses);

  /// Mass 1/m at each point (ties merged). Cumulatives are exactly k/m.
  static StepCdf equal_mass(std::vector<double> points);
  static StepCdf point_mass(double x);

  std::size_t size() const { return loc_.size(); }
  const std::vector<double>& locations() const { return loc_; }
  const std::vector<double>& masses() const { return mass_; }
  const std::vector<double>& cumulative() const { return cum_; }

  /// Right-continuous G(x).
  double eval(double x) const;
  /// G(x-).
  double eval_left(double x) const;
  /// inf{x : G(x) >= p}; throws std::domain_error unless 0 < p <= 1.
  double quantile(double p) const;
  double mean() const;

  /// "location,mass" with a header row, 17 significant digits.
  void write_csv(std::ostream& out) const;
  static StepCdf read_csv(std::istream& in);

 private:
  StepCdf() = default;
  std::vector<double> loc_;
  std::vector<double> mass_;
  std::vector<double> cum_;
};

StepCdf ecdf(const Sample& s);

inline constexpr double kSupNorm = std::numeric_limits<double>::infinity();

/// Exact ||G - H||_p (p >= 1 or kSupNorm).
double lp_distance_step_step(const StepCdf& g, const StepCdf& h, double p);

/// int_{-inf}^{a} F(x)^p dx = int_0^{F(a)} p t^{p-1} (a - Q(t)) dt.
double lower_tail_lp(const Distribution& f, double a, double p);

/// int_{b}^{inf} (1 - F(x))^p dx = int_0^{S(b)} p s^{p-1} (Q(1-s) - b) ds.
double upper_tail_lp(const Distribution& f, double b, double p);

/// ||G - F||_p for a reference law F. Segments between jumps use adaptive
/// Simpson (absolute tolerance 1e-9 shared across segments); unbounded tails
/// are integrated in the quantile domain. Throws QuadratureError on failure.
double lp_distance_step_cont(const StepCdf& g, const Distribution& f, double p);

}  // namespace ehcdf

#endif  // EHCDF_CDF_MODEL_HPP

#ifndef EHCDF_WEIGHT_FUNCTION_HPP
#define EHCDF_WEIGHT_FUNCTION_HPP

#include <vector>

namespace ehcdf {

/// A weight w on (0,1) for L-functionals T_w(G) = int_0^1 G^{-1}(u) w(u) du.
class WeightFunction {
 public:
  enum class Kind { polynomial, tabulated, beta_mixture };

  /// w(u) = sum_k coeffs[k] u^k, degree <= 16.
  static WeightFunction polynomial(std::vector<double> coeffs);
  /// Piecewise linear through (grid[i], values[i]); grid increasing from 0 to 1.
  static WeightFunction tabulated(std::vector<double> grid, std::vector<double> values);
  /// w(u) = sum_j c[j-1] f_{B_{j:m}}(u), m = c.size().
  static WeightFunction beta_mixture(std::vector<double> c);
  /// Shifted Legendre weight w_r(u) = sum_k (-1)^{r-k} C(r,k) C(r+k,k) u^k.
  static WeightFunction shifted_legendre(int r);

  Kind kind() const { return kind_; }
  const std::vector<double>& coefficients() const { return a_; }

  double value(double u) const;
  /// int_a^b w(u) du for 0 <= a <= b <= 1; closed form for every kind.
  double integral(double a, double b) const;

 private:
  explicit WeightFunction(Kind kind) : kind_(kind) {}
  double antiderivative(double u) const;

  Kind kind_;
  std::vector<double> a_;     // coefficients, grid values or mixture weights
  std::vector<double> grid_;  // tabulated only
  std::vector<double> cum_;   // tabulated only: int_0^{grid[i]} w
};

}  // namespace ehcdf

#endif  // EHCDF_WEIGHT_FUNCTION_HPP

#ifndef EHCDF_QUADRATURE_HPP
#define EHCDF_QUADRATURE_HPP

#include <functional>
#include <span>
#include <stdexcept>
#include <string>

namespace ehcdf {

/// A point of (0,1) carried together with its exact complement, so that
/// quantile functions can be evaluated at 1 - 1e-40 without rounding to 1.
struct UnitPoint {
  double t;
  double tc;
};

inline UnitPoint unit_point(double t) { return {t, 1.0 - t}; }

/// Raised when an integral fails to converge; carries the offending range.
class QuadratureError : public std::runtime_error {
 public:
  QuadratureError(const std::string& what, double lower, double upper);
  double lower() const { return lower_; }
  double upper() const { return upper_; }

 private:
  double lower_;
  double upper_;
};

struct QuadratureOptions {
  double rel_tol = 1e-8;
  double abs_tol = 1e-12;
  int max_depth = 48;  // bisection levels per panel
  int max_dyadic_panels = 1000;
};

/// Integral of f over [a, b] within [0, 1]. Endpoints equal to exactly 0 or 1
/// may be integrable singularities: they are approached through dyadic panels
/// (in the complement coordinate near 1) until contributions are negligible.
/// Every piece between cut points is integrated by adaptive bisection of
/// 64-point Gauss-Legendre panels; each panel meets max(abs share, rel_tol
/// times its own magnitude).
/// `breakpoints` are extra cut points (kinks, jumps, concentrated mass).
double integrate_unit(const std::function<double(UnitPoint)>& f, double a, double b,
                      const QuadratureOptions& opts = {},
                      std::span<const double> breakpoints = {});

/// Composite Gauss-Legendre (64 nodes per panel) on a finite interval.
double gauss_legendre(const std::function<double(double)>& f, double a, double b,
                      int panels = 1);

/// Adaptive Simpson with Richardson correction. Throws QuadratureError when
/// the recursion cap is reached without meeting the tolerance.
double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                        double tol, int max_depth = 50);

}  // namespace ehcdf

#endif  // EHCDF_QUADRATURE_HPP

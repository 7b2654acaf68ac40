#include "ehcdf/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

namespace ehcdf {

namespace {

constexpr int kNodes = 64;
constexpr double kInvSqrt2 = 0.70710678118654752440;

struct GaussLegendreRule {
  std::array<double, kNodes> x{};
  std::array<double, kNodes> w{};
};

GaussLegendreRule make_rule() {
  GaussLegendreRule rule;
  const int n = kNodes;
  for (int i = 0; i < n / 2; ++i) {
    double z = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double pp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p1 = 1.0;
      double p2 = 0.0;
      for (int j = 1; j <= n; ++j) {
        const double p3 = p2;
        p2 = p1;
        p1 = ((2.0 * j - 1.0) * z * p2 - (j - 1.0) * p3) / j;
      }
      pp = n * (z * p1 - p2) / (z * z - 1.0);
      const double z1 = z;
      z = z1 - p1 / pp;
      if (std::fabs(z - z1) < 1e-16) break;
    }
    rule.x[i] = -z;
    rule.x[n - 1 - i] = z;
    rule.w[i] = rule.w[n - 1 - i] = 2.0 / ((1.0 - z * z) * pp * pp);
  }
  return rule;
}

const GaussLegendreRule& rule() {
  static const GaussLegendreRule r = make_rule();
  return r;
}

// A piece of [0,1] expressed in a coordinate s that is either t itself
// (lower half) or the complement 1 - t (upper half). In both cases a
// possibly singular endpoint sits at s = 0.
struct Piece {
  bool upper;
  double s_lo;
  double s_hi;
};

double panel(const std::function<double(UnitPoint)>& f, const Piece& piece, double lo,
             double hi) {
  const auto& r = rule();
  const double mid = 0.5 * (lo + hi);
  const double half = 0.5 * (hi - lo);
  double sum = 0.0;
  for (int i = 0; i < kNodes; ++i) {
    const double s = mid + half * r.x[i];
    const UnitPoint u = piece.upper ? UnitPoint{1.0 - s, s} : UnitPoint{s, 1.0 - s};
    const double v = f(u);
    if (!std::isfinite(v)) {
      throw QuadratureError("non-finite integrand", piece.upper ? 1.0 - hi : lo,
                            piece.upper ? 1.0 - lo : hi);
    }
    sum += r.w[i] * v;
  }
  return sum * half;
}

// Adaptive bisection: a panel is accepted when the 64-node estimate and the
// sum over its two halves agree to `tol`. The tolerance shrinks by sqrt(2)
// per level, so even an unflagged jump converges.
double adapt(const std::function<double(UnitPoint)>& f, const Piece& piece, double lo, double hi,
             double whole, double tol, int depth) {
  const double mid = 0.5 * (lo + hi);
  const double left = panel(f, piece, lo, mid);
  const double right = panel(f, piece, mid, hi);
  const double delta = left + right - whole;
  const double roundoff =
      64.0 * std::numeric_limits<double>::epsilon() * (std::fabs(left) + std::fabs(right));
  if (std::fabs(delta) <= tol || std::fabs(delta) <= roundoff) return left + right;
  if (depth <= 0 || !(mid > lo && mid < hi)) {
    throw QuadratureError("refinement did not converge", piece.upper ? 1.0 - hi : lo,
                          piece.upper ? 1.0 - lo : hi);
  }
  const double sub = tol * kInvSqrt2;
  return adapt(f, piece, lo, mid, left, sub, depth - 1) +
         adapt(f, piece, mid, hi, right, sub, depth - 1);
}

double adaptive_panel(const std::function<double(UnitPoint)>& f, const Piece& piece, double lo,
                      double hi, double abs_share, const QuadratureOptions& opts) {
  const double whole = panel(f, piece, lo, hi);
  const double tol = std::max(abs_share, opts.rel_tol * std::fabs(whole));
  return adapt(f, piece, lo, hi, whole, tol, opts.max_depth);
}

double integrate_piece(const std::function<double(UnitPoint)>& f, const Piece& piece,
                       double abs_share, const QuadratureOptions& opts) {
  if (piece.s_lo > 0.0) return adaptive_panel(f, piece, piece.s_lo, piece.s_hi, abs_share, opts);
  // Dyadic panels [s_hi 2^-(k+1), s_hi 2^-k] toward the endpoint; the
  // absolute allowance shrinks geometrically so that it sums to abs_share.
  double total = 0.0;
  int quiet = 0;
  double hi = piece.s_hi;
  double share = abs_share * (1.0 - kInvSqrt2);
  for (int k = 0; k < opts.max_dyadic_panels; ++k) {
    const double lo = 0.5 * hi;
    const double contribution = adaptive_panel(f, piece, lo, hi, share, opts);
    total += contribution;
    const double negligible = 0.05 * std::max(opts.abs_tol, opts.rel_tol * std::fabs(total));
    quiet = (std::fabs(contribution) <= negligible) ? quiet + 1 : 0;
    if (k >= 4 && quiet >= 3) return total;
    hi = lo;
    share *= kInvSqrt2;
  }
  const double edge = piece.upper ? 1.0 : 0.0;
  throw QuadratureError("endpoint contributions do not decay (divergent integral?)", edge,
                        edge);
}

}  // namespace

QuadratureError::QuadratureError(const std::string& what, double lower, double upper)
    : std::runtime_error(what + " on [" + std::to_string(lower) + ", " +
                         std::to_string(upper) + "]"),
      lower_(lower),
      upper_(upper) {}

double integrate_unit(const std::function<double(UnitPoint)>& f, double a, double b,
                      const QuadratureOptions& opts, std::span<const double> breakpoints) {
  if (!(a >= 0.0 && b <= 1.0 && a <= b)) {
    throw std::domain_error("integrate_unit: need 0 <= a <= b <= 1");
  }
  if (a == b) return 0.0;
  std::vector<double> cuts{a, b};
  if (a < 0.5 && b > 0.5) cuts.push_back(0.5);
  for (double c : breakpoints) {
    if (c > a && c < b) cuts.push_back(c);
  }
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

  std::vector<Piece> pieces;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    const double u = cuts[i];
    const double v = cuts[i + 1];
    if (v <= 0.5) {
      pieces.push_back({false, u, v});
    } else {
      pieces.push_back({true, 1.0 - v, 1.0 - u});
    }
  }

  const double abs_share = opts.abs_tol / static_cast<double>(pieces.size());
  double total = 0.0;
  for (const auto& p : pieces) total += integrate_piece(f, p, abs_share, opts);
  return total;
}

double gauss_legendre(const std::function<double(double)>& f, double a, double b,
                      int panels) {
  const auto& r = rule();
  const double width = (b - a) / panels;
  double sum = 0.0;
  for (int k = 0; k < panels; ++k) {
    const double lo = a + k * width;
    const double mid = lo + 0.5 * width;
    double s = 0.0;
    for (int i = 0; i < kNodes; ++i) s += r.w[i] * f(mid + 0.5 * width * r.x[i]);
    sum += 0.5 * width * s;
  }
  return sum;
}

namespace {

double simpson_step(const std::function<double(double)>& f, double a, double b, double fa,
                    double fm, double fb, double whole, double tol, int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const double flm = f(lm);
  const double frm = f(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const double delta = left + right - whole;
  const double roundoff =
      64.0 * std::numeric_limits<double>::epsilon() * (std::fabs(left) + std::fabs(right));
  if (std::fabs(delta) <= 15.0 * tol || std::fabs(delta) <= roundoff) {
    return left + right + delta / 15.0;
  }
  if (depth <= 0) throw QuadratureError("adaptive Simpson recursion cap reached", a, b);
  return simpson_step(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
         simpson_step(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

}  // namespace

double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                        double tol, int max_depth) {
  if (a == b) return 0.0;
  const double fa = f(a);
  const double fb = f(b);
  const double fm = f(0.5 * (a + b));
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  return simpson_step(f, a, b, fa, fm, fb, whole, tol, max_depth);
}

}  // namespace ehcdf

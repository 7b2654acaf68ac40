#ifndef EHCDF_SPECIAL_FN_HPP
#define EHCDF_SPECIAL_FN_HPP

namespace ehcdf {

/// Rank j of an order statistic in a sample of size m. The uniform order
/// statistic U_{j:m} follows Beta(j, m - j + 1).
class BetaParams {
 public:
  /// Throws std::domain_error unless 1 <= j <= m.
  BetaParams(int j, int m);

  int j() const { return j_; }
  int m() const { return m_; }
  double alpha() const { return j_; }
  double beta() const { return m_ - j_ + 1; }
  double mean() const { return static_cast<double>(j_) / (m_ + 1.0); }
  double variance() const;

 private:
  int j_;
  int m_;
};

/// Thread-safe log-gamma (glibc's std::lgamma writes the global signgam).
double log_gamma(double x);

/// log C(n, k) for 0 <= k <= n.
double log_binomial_coefficient(int n, int k);

/// P(U_{j:m} <= x), the regularized incomplete beta I_x(j, m - j + 1).
/// Continued fraction (modified Lentz) with the symmetry flip on the slow
/// side. Throws std::domain_error for x outside [0, 1].
double beta_cdf(const BetaParams& p, double x);

/// Same as beta_cdf but with the complement xc = 1 - x supplied separately so
/// that points extremely close to 1 keep their precision.
double beta_cdf(const BetaParams& p, double x, double xc);

/// Density m C(m-1, j-1) x^{j-1} (1-x)^{m-j}, evaluated in log space.
/// Throws std::domain_error unless 0 < x < 1.
double beta_pdf(const BetaParams& p, double x);
double beta_pdf(const BetaParams& p, double x, double xc);

/// P(B >= j) for B ~ Binomial(m, x), by direct summation of the pmf.
/// Reference evaluation for beta_cdf; O(m).
double binomial_upper_tail(int m, int j, double x);

/// (1/m) E|B - m t| for B ~ Binomial(m, t), exact summation.
double binomial_mean_abs_dev(int m, double t);

}  // namespace ehcdf

#endif  // EHCDF_SPECIAL_FN_HPP

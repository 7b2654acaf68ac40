#ifndef EHCDF_SUITES_HPP
#define EHCDF_SUITES_HPP

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

namespace ehcdf {

/// One invariant evaluated numerically. `measured` is compared against
/// `threshold` in the direction stated by `detail`.
struct CheckResult {
  std::string name;
  double measured = 0.0;
  double threshold = 0.0;
  bool pass = false;
  std::string detail;
};

/// Mean, MAD, L-skewness and L-kurtosis of the EHCDF against their exact
/// finite-m transforms of the ECDF; `samples` random samples of size <= 40,
/// every m in 2..60. Worst absolute deviation, threshold 1e-10.
CheckResult check_moment_identities(std::uint64_t seed, int samples = 500);

/// ||H_m F - H_m G||_p^p <= ||F - G||_1 over random step CDF pairs,
/// p in {1,2,3}, m in {1,5,40}. Worst excess, threshold 1e-9.
CheckResult check_contraction(std::uint64_t seed, int pairs = 200);

/// ||I_m h||_p <= ||h||_p for random polynomials h, p in {1,2,4},
/// m in {1,5,50}. Worst excess, threshold 1e-9.
CheckResult check_quantile_operator_bound(std::uint64_t seed, int polynomials = 20);

/// T_w(H_m G) = T_{P_m[w]}(G) for the shifted Legendre weights w_0..w_3,
/// random discrete G and m in {1,3,10}. Worst deviation, threshold 1e-8.
CheckResult check_closure(std::uint64_t seed, int laws = 100);

/// int_0^1 sqrt(t(1-t)) dQ(t) for N(0,1) by quadrature in the probability
/// domain.
double normal_rate_constant();

/// sqrt(m) ||H_m(F) - F||_1 for F = N(0,1), m in {4,16,64,256}: returns the
/// bound check (worst value over the constant) and the monotone check
/// (largest relative increase between consecutive m, threshold 2%).
std::vector<CheckResult> check_rate_bound();

/// Median over `reps` samples of ||I_m(Q_n) - Q||_1 (N(0,1), n = m) along
/// n in {50, 200, 800}; passes when strictly decreasing.
CheckResult check_quantile_consistency(std::uint64_t seed, int reps = 100);

/// Median of ||F_{n,m} - F||_1 with m = n along n in {50, 200, 800}.
CheckResult check_ehcdf_consistency(std::uint64_t seed, int reps = 100);

/// KS distance between sqrt(n)||F_{n,m} - F_m||_1 (N(0,1), n = 2000, m = 5,
/// 500 replications) and 5000 draws of (1/m) sum_j |Z_j|; threshold 0.08.
CheckResult check_fixed_m_limit(std::uint64_t seed, int reps = 500, int bridges = 5000);

/// Same design for sqrt(n)||.||_2^2 against m^{-2} sum |Z_j| and for
/// n W_2^2 against (1/m) sum Z_j^2; threshold 0.08 each.
std::vector<CheckResult> check_fixed_m_power_limits(std::uint64_t seed, int reps = 500,
                                                    int bridges = 5000);

/// n W_2^2(F_{n,n}, F_n) for U[0,1], n = 4000, against int Q^2; threshold 0.10.
/// A second entry reports |mean of the bridge draws - 1/6| against 4 standard
/// errors.
std::vector<CheckResult> check_w2_joint_limit(std::uint64_t seed, int n = 4000, int reps = 500,
                                              int bridges = 2000);

/// m^{p-1} sqrt(n) ||F_{n,m} - F_m||_p^p, p = 2, U[0,1], n = 10^4, m = 25,
/// against int |Q|; threshold 0.12. A second entry compares the same draws
/// with the fixed-m law (1/m) sum |Z_j|.
std::vector<CheckResult> check_bounded_support_limit(std::uint64_t seed, int reps = 500,
                                                     int bridges = 5000);

/// Bootstrap law of sqrt(n)||F*_{n,m} - F_{n,m}||_1 for one N(0,1) sample
/// (n = 2000, m = 5) against (1/m) sum |Z_j|; threshold 0.10.
CheckResult check_bootstrap_limit(std::uint64_t seed, int draws = 1000, int bridges = 5000);

/// Suite names: identities, contraction, rates, limits, bootstrap.
/// Throws std::invalid_argument for any other name.
std::vector<CheckResult> run_suite(const std::string& name, std::uint64_t seed);
const std::vector<std::string>& suite_names();

/// "check,measured,threshold,pass,detail" rows.
void write_report_csv(std::ostream& out, const std::vector<CheckResult>& checks);

}  // namespace ehcdf

#endif  // EHCDF_SUITES_HPP

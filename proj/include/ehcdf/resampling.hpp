#ifndef EHCDF_RESAMPLING_HPP
#define EHCDF_RESAMPLING_HPP

#include <vector>

#include "ehcdf/cdf_model.hpp"
#include "ehcdf/distributions.hpp"
#include "ehcdf/rng.hpp"

namespace ehcdf {

/// Multinomial(n; 1/n, ..., 1/n) counts from n uniform category draws.
std::vector<int> multinomial_counts(std::size_t n, Rng& rng);

/// Bootstrap ECDF with counts[i] attached to the i-th order statistic.
StepCdf bootstrap_ecdf(const Sample& s, const std::vector<int>& counts);

/// H_m of the bootstrap ECDF, weights F_B(C_i/n) - F_B(C_{i-1}/n) with C_i the
/// cumulative counts along the order statistics. With all counts equal to 1
/// this reproduces ehcdf(s, m) bit for bit.
StepCdf bootstrap_ehcdf(const Sample& s, int m, const std::vector<int>& counts);
StepCdf bootstrap_ehcdf(const Sample& s, int m, Rng& rng);

/// Brownian bridge on the grid k/K, k = 0..K; values.front() == values.back() == 0.
struct BridgePath {
  std::vector<double> values;
  int grid_size() const { return static_cast<int>(values.size()) - 1; }
};

inline constexpr int kDefaultBridgeGrid = 4096;

BridgePath simulate_bridge(int k, Rng& rng);

/// Z_j = int Q dF_{B_{j:m}} with Q = B / f(Q(t)), as a Riemann sum over the
/// interior grid points t = 1/K, ..., 1 - 1/K. Weights are precomputed once.
class LimitFunctional {
 public:
  /// Throws std::runtime_error when f(Q(t)) is zero or not finite on the grid.
  /// Without order weights only int_abs_q is available.
  LimitFunctional(const Distribution& f, int m, int k = kDefaultBridgeGrid,
                  bool order_weights = true);

  int m() const { return m_; }
  int grid_size() const { return k_; }
  std::vector<double> z(const BridgePath& path) const;
  /// int_0^1 |Q|^power dt on the same grid.
  double int_abs_q(const BridgePath& path, double power) const;

 private:
  int m_;
  int k_;
  std::vector<double> inv_density_;  // 1 / f(Q(k/K)), k = 1..K-1
  std::vector<double> weights_;      // m rows of K-1: f_{B_{j:m}}(t_k) / (K f(Q(t_k)))
};

std::vector<double> limit_z(const Distribution& f, int m, const BridgePath& path);

enum class LimitKind {
  sum_abs_L1,     // (1/m) sum_j |Z_j|
  int_abs_Q,      // int |Q|
  sum_abs_Lp,     // m^{-p} sum_j |Z_j|
  wp_power,       // (1/m) sum_j |Z_j|^p
  int_Q_squared,  // int Q^2
};

/// `reps` independent draws of the requested limit functional, one fresh
/// bridge per draw. int_Q_squared is refused (std::invalid_argument) for laws
/// whose q2_status() is fails.
std::vector<double> limit_statistic_sample(const Distribution& f, int m, LimitKind kind,
                                           int reps, Rng& rng, double p = 1.0,
                                           int k = kDefaultBridgeGrid);

}  // namespace ehcdf

#endif  // EHCDF_RESAMPLING_HPP

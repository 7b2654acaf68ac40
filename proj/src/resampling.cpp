#include "ehcdf/resampling.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "ehcdf/hoeffding.hpp"
#include "ehcdf/special_fn.hpp"

namespace ehcdf {

std::vector<int> multinomial_counts(std::size_t n, Rng& rng) {
  std::vector<int> counts(n, 0);
  for (std::size_t i = 0; i < n; ++i) ++counts[rng.below(n)];
  return counts;
}

namespace {

void check_counts(const Sample& s, const std::vector<int>& counts) {
  if (counts.size() != s.size()) {
    throw std::invalid_argument("bootstrap: counts must match the sample size");
  }
  long total = 0;
  for (int c : counts) {
    if (c < 0) throw std::invalid_argument("bootstrap: negative count");
    total += c;
  }
  if (total != static_cast<long>(s.size())) {
    throw std::invalid_argument("bootstrap: counts must sum to n");
  }
}

}  // namespace

StepCdf bootstrap_ecdf(const Sample& s, const std::vector<int>& counts) {
  check_counts(s, counts);
  const double n = static_cast<double>(s.size());
  std::vector<double> mass(counts.size());
  for (std::size_t i = 0; i < counts.size(); ++i) mass[i] = counts[i] / n;
  return StepCdf(s.sorted(), std::move(mass));
}

StepCdf bootstrap_ehcdf(const Sample& s, int m, const std::vector<int>& counts) {
  check_counts(s, counts);
  const double n = static_cast<double>(s.size());
  std::vector<double> c(counts.size());
  long acc = 0;
  for (std::size_t i = 0; i < counts.size(); ++i) {
    acc += counts[i];
    c[i] = static_cast<double>(acc) / n;
  }
  return hoeffding_cdf(expected_order_stats(s.sorted(), c, m));
}

StepCdf bootstrap_ehcdf(const Sample& s, int m, Rng& rng) {
  return bootstrap_ehcdf(s, m, multinomial_counts(s.size(), rng));
}

BridgePath simulate_bridge(int k, Rng& rng) {
  if (k < 2) throw std::invalid_argument("simulate_bridge: need K >= 2");
  BridgePath path;
  path.values.resize(static_cast<std::size_t>(k) + 1);
  const double step_sd = 1.0 / std::sqrt(static_cast<double>(k));
  double w = 0.0;
  path.values[0] = 0.0;
  for (int i = 1; i <= k; ++i) {
    w += step_sd * rng.normal();
    path.values[i] = w;
  }
  const double w1 = path.values[k];
  for (int i = 1; i < k; ++i) {
    path.values[i] -= (static_cast<double>(i) / k) * w1;
  }
  path.values[k] = 0.0;
  return path;
}

LimitFunctional::LimitFunctional(const Distribution& f, int m, int k, bool order_weights)
    : m_(m), k_(k) {
  if (m < 1 || k < 2) throw std::invalid_argument("LimitFunctional: need m >= 1, K >= 2");
  if (!f.has_density()) {
    throw std::invalid_argument("LimitFunctional: " + f.name() + " has no density");
  }
  inv_density_.resize(static_cast<std::size_t>(k) - 1);
  for (int i = 1; i < k; ++i) {
    const UnitPoint u{static_cast<double>(i) / k, static_cast<double>(k - i) / k};
    const double dens = f.pdf(f.quantile_at(u));
    if (!(dens > 0.0) || !std::isfinite(dens)) {
      throw std::runtime_error("LimitFunctional: density of " + f.name() +
                               " vanishes or overflows at t = " + std::to_string(u.t));
    }
    inv_density_[i - 1] = 1.0 / dens;
  }
  if (!order_weights) return;
  weights_.resize(static_cast<std::size_t>(m) * (k - 1));
  for (int j = 1; j <= m; ++j) {
    const BetaParams b(j, m);
    double* row = &weights_[static_cast<std::size_t>(j - 1) * (k - 1)];
    for (int i = 1; i < k; ++i) {
      const double t = static_cast<double>(i) / k;
      const double tc = static_cast<double>(k - i) / k;
      row[i - 1] = beta_pdf(b, t, tc) * inv_density_[i - 1] / k;
    }
  }
}

std::vector<double> LimitFunctional::z(const BridgePath& path) const {
  if (weights_.empty()) throw std::logic_error("LimitFunctional: built without order weights");
  if (path.grid_size() != k_) throw std::invalid_argument("LimitFunctional: grid mismatch");
  std::vector<double> out(static_cast<std::size_t>(m_), 0.0);
  for (int j = 0; j < m_; ++j) {
    const double* row = &weights_[static_cast<std::size_t>(j) * (k_ - 1)];
    double s = 0.0;
    for (int i = 1; i < k_; ++i) s += path.values[i] * row[i - 1];
    out[j] = s;
  }
  return out;
}

double LimitFunctional::int_abs_q(const BridgePath& path, double power) const {
  if (path.grid_size() != k_) throw std::invalid_argument("LimitFunctional: grid mismatch");
  double s = 0.0;
  for (int i = 1; i < k_; ++i) {
    const double v = std::fabs(path.values[i] * inv_density_[i - 1]);
    s += power == 1.0 ? v : std::pow(v, power);
  }
  return s / k_;
}

std::vector<double> limit_z(const Distribution& f, int m, const BridgePath& path) {
  return LimitFunctional(f, m, path.grid_size()).z(path);
}

std::vector<double> limit_statistic_sample(const Distribution& f, int m, LimitKind kind,
                                           int reps, Rng& rng, double p, int k) {
  if (reps < 1) throw std::invalid_argument("limit_statistic_sample: need reps >= 1");
  if (kind == LimitKind::int_Q_squared && f.q2_status() == Q2Status::fails) {
    throw std::invalid_argument("limit_statistic_sample: " + f.name() +
                                " fails the square-integrability condition required for "
                                "the W2 limit");
  }
  const bool needs_z = kind == LimitKind::sum_abs_L1 || kind == LimitKind::sum_abs_Lp ||
                       kind == LimitKind::wp_power;
  const LimitFunctional lf(f, m, k, needs_z);
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(reps));
  for (int r = 0; r < reps; ++r) {
    const BridgePath path = simulate_bridge(k, rng);
    double v = 0.0;
    switch (kind) {
      case LimitKind::sum_abs_L1:
      case LimitKind::sum_abs_Lp: {
        for (double zj : lf.z(path)) v += std::fabs(zj);
        v /= kind == LimitKind::sum_abs_L1 ? m : std::pow(static_cast<double>(m), p);
        break;
      }
      case LimitKind::wp_power: {
        for (double zj : lf.z(path)) v += std::pow(std::fabs(zj), p);
        v /= m;
        break;
      }
      case LimitKind::int_abs_Q:
        v = lf.int_abs_q(path, 1.0);
        break;
      case LimitKind::int_Q_squared:
        v = lf.int_abs_q(path, 2.0);
        break;
    }
    out.push_back(v);
  }
  return out;
}

}  // namespace ehcdf

#include "ehcdf/suites.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "ehcdf/cdf_model.hpp"
#include "ehcdf/csv.hpp"
#include "ehcdf/distributions.hpp"
#include "ehcdf/hoeffding.hpp"
#include "ehcdf/l_functionals.hpp"
#include "ehcdf/metrics.hpp"
#include "ehcdf/quadrature.hpp"
#include "ehcdf/resampling.hpp"
#include "ehcdf/rng.hpp"
#include "ehcdf/stat_tests.hpp"
#include "ehcdf/weight_function.hpp"

namespace ehcdf {

namespace {

// Stream coordinates that keep the suites' draws apart.
enum StreamTag : std::uint64_t {
  kIdentities = 1,
  kContraction,
  kOperatorBound,
  kClosure,
  kQuantileTrend,
  kEhcdfTrend,
  kFixedM,
  kFixedMPower,
  kW2Joint,
  kBoundedSupport,
  kBootstrap,
};

std::string fmt(double v) { return format_real(v); }

CheckResult at_most(std::string name, double measured, double threshold, std::string detail) {
  return {std::move(name), measured, threshold, measured <= threshold, std::move(detail)};
}

// Values with ties (integer grid) half of the time, continuous otherwise.
std::vector<double> random_values(Rng& rng, int n) {
  std::vector<double> v(static_cast<std::size_t>(n));
  const bool ties = rng.uniform() < 0.5;
  for (auto& x : v) {
    x = ties ? static_cast<double>(rng.below(7)) - 3.0 : 2.0 * rng.normal();
  }
  return v;
}

StepCdf random_step_cdf(Rng& rng, int max_atoms) {
  const int k = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(max_atoms)));
  std::vector<double> loc = random_values(rng, k);
  std::vector<double> mass(loc.size());
  double total = 0.0;
  for (auto& w : mass) {
    w = -std::log(rng.uniform_open());
    total += w;
  }
  for (auto& w : mass) w /= total;
  return StepCdf(std::move(loc), std::move(mass));
}

Sample normal_sample(Rng& rng, int n) {
  std::vector<double> v(static_cast<std::size_t>(n));
  for (auto& x : v) x = rng.normal();
  return Sample(std::move(v));
}

Sample law_sample(const Distribution& f, Rng& rng, int n) {
  std::vector<double> v(static_cast<std::size_t>(n));
  for (auto& x : v) x = f.sample(rng);
  return Sample(std::move(v));
}

std::string ks_detail(std::size_t a, std::size_t b) {
  return "two-sample KS over " + std::to_string(a) + " statistics and " + std::to_string(b) +
         " limit draws; pass when measured <= threshold";
}

const DistributionPtr& standard_normal() {
  static const DistributionPtr f = catalog_lookup("normal", {0.0, 1.0});
  return f;
}

const DistributionPtr& standard_uniform() {
  static const DistributionPtr f = catalog_lookup("uniform", {0.0, 1.0});
  return f;
}

}  // namespace

CheckResult check_moment_identities(std::uint64_t seed, int samples) {
  double worst = 0.0;
  std::string where;
  int cases = 0;
  for (int s = 0; s < samples; ++s) {
    Rng rng(derive_stream(seed, {kIdentities, static_cast<std::uint64_t>(s)}));
    const int n = 2 + static_cast<int>(rng.below(39));
    const Sample sample(random_values(rng, n));
    const StepCdf fn = ecdf(sample);
    const LRatios base = l_ratios(fn);
    const double mean = sample.mean();
    for (int m = 2; m <= 60; ++m) {
      const StepCdf h = ehcdf(sample, m);
      const LRatios r = l_ratios(h);
      const double md = static_cast<double>(m);
      auto note = [&](double dev, const char* what) {
        if (dev > worst) {
          worst = dev;
          where = std::string(what) + " at sample " + std::to_string(s) + ", m=" +
                  std::to_string(m);
        }
      };
      note(std::fabs(h.mean() - mean), "mean");
      note(std::fabs(r.mad - (md - 1.0) / md * base.mad), "MAD");
      if (base.skew && r.skew) {
        note(std::fabs(*r.skew - (md - 2.0) / md * *base.skew), "L-skewness");
      } else if (base.skew.has_value() != r.skew.has_value()) {
        note(std::numeric_limits<double>::infinity(), "L-skewness defined on one side only");
      }
      if (base.kurt && r.kurt) {
        const double expect = (md - 2.0) * (md - 3.0) / (md * md) * *base.kurt - 1.0 / (md * md);
        note(std::fabs(*r.kurt - expect), "L-kurtosis");
      }
      ++cases;
    }
  }
  return at_most("moment_identities", worst, 1e-10,
                 std::to_string(cases) + " (sample, m) cases; worst: " +
                     (where.empty() ? "none" : where));
}

CheckResult check_contraction(std::uint64_t seed, int pairs) {
  double worst = -std::numeric_limits<double>::infinity();
  std::string where;
  for (int k = 0; k < pairs; ++k) {
    Rng rng(derive_stream(seed, {kContraction, static_cast<std::uint64_t>(k)}));
    const StepCdf f = random_step_cdf(rng, 12);
    const StepCdf g = random_step_cdf(rng, 12);
    const double l1 = lp_distance_step_step(f, g, 1.0);
    for (int m : {1, 5, 40}) {
      const StepCdf hf = hoeffding_cdf(f, m);
      const StepCdf hg = hoeffding_cdf(g, m);
      for (double p : {1.0, 2.0, 3.0}) {
        const double excess = std::pow(lp_distance_step_step(hf, hg, p), p) - l1;
        if (excess > worst) {
          worst = excess;
          where = "pair " + std::to_string(k) + ", m=" + std::to_string(m) + ", p=" + fmt(p);
        }
      }
    }
  }
  return at_most("contraction", worst, 1e-9,
                 "max of ||H_m F - H_m G||_p^p - ||F - G||_1; worst at " + where);
}

CheckResult check_quantile_operator_bound(std::uint64_t seed, int polynomials) {
  double worst = -std::numeric_limits<double>::infinity();
  std::string where;
  for (int k = 0; k < polynomials; ++k) {
    Rng rng(derive_stream(seed, {kOperatorBound, static_cast<std::uint64_t>(k)}));
    const int degree = 1 + static_cast<int>(rng.below(6));
    std::vector<double> a(static_cast<std::size_t>(degree) + 1);
    for (auto& c : a) c = 3.0 * rng.normal();
    const WeightFunction h = WeightFunction::polynomial(a);
    auto hv = [&](UnitPoint u) { return h.value(u.t); };
    // |h|^p has kinks at the roots of h; cut the quadrature there.
    std::vector<double> roots;
    constexpr int kScan = 4096;
    for (int i = 0; i < kScan; ++i) {
      double lo = static_cast<double>(i) / kScan;
      double hi = static_cast<double>(i + 1) / kScan;
      if ((h.value(lo) > 0.0) == (h.value(hi) > 0.0)) continue;
      for (int it = 0; it < 60; ++it) {
        const double mid = 0.5 * (lo + hi);
        ((h.value(mid) > 0.0) == (h.value(lo) > 0.0) ? lo : hi) = mid;
      }
      roots.push_back(0.5 * (lo + hi));
    }
    QuadratureOptions tight;
    tight.rel_tol = 1e-12;
    for (int m : {1, 5, 50}) {
      const MStepFunction im = i_m_apply(hv, m, tight);
      for (double p : {1.0, 2.0, 4.0}) {
        const double norm = std::pow(
            integrate_unit([&](UnitPoint u) { return std::pow(std::fabs(h.value(u.t)), p); }, 0.0,
                           1.0, tight, roots),
            1.0 / p);
        const double excess = im.lp_norm(p) - norm;
        if (excess > worst) {
          worst = excess;
          where = "polynomial " + std::to_string(k) + ", m=" + std::to_string(m) + ", p=" + fmt(p);
        }
      }
    }
  }
  return at_most("quantile_operator_bound", worst, 1e-9,
                 "max of ||I_m h||_p - ||h||_p; worst at " + where);
}

CheckResult check_closure(std::uint64_t seed, int laws) {
  double worst = 0.0;
  std::string where;
  for (int k = 0; k < laws; ++k) {
    Rng rng(derive_stream(seed, {kClosure, static_cast<std::uint64_t>(k)}));
    const StepCdf g = random_step_cdf(rng, 15);
    for (int m : {1, 3, 10}) {
      const StepCdf hg = hoeffding_cdf(g, m);
      for (int r = 0; r <= 3; ++r) {
        const WeightFunction w = WeightFunction::shifted_legendre(r);
        const double dev = std::fabs(t_w(hg, w) - t_w(g, p_m_weight(w, m)));
        if (dev > worst) {
          worst = dev;
          where = "law " + std::to_string(k) + ", m=" + std::to_string(m) + ", w_" +
                  std::to_string(r);
        }
      }
    }
  }
  return at_most("closure", worst, 1e-8,
                 "max |T_w(H_m G) - T_{P_m[w]}(G)|; worst at " + (where.empty() ? "none" : where));
}

double normal_rate_constant() {
  const auto& f = standard_normal();
  QuadratureOptions opts;
  opts.rel_tol = 1e-12;
  return integrate_unit(
      [&](UnitPoint u) { return std::sqrt(u.t * u.tc) / f->pdf(f->quantile_at(u)); }, 0.0, 1.0,
      opts);
}

std::vector<CheckResult> check_rate_bound() {
  const auto& f = standard_normal();
  const double bound = normal_rate_constant();
  std::vector<double> scaled;
  std::ostringstream values;
  for (int m : {4, 16, 64, 256}) {
    const StepCdf fm = hoeffding_cdf(mu_true(*f, m));
    scaled.push_back(std::sqrt(static_cast<double>(m)) * lp_distance_step_cont(fm, *f, 1.0));
    values << (scaled.size() > 1 ? ", " : "") << "m=" << m << ": " << fmt(scaled.back());
  }
  const double worst = *std::max_element(scaled.begin(), scaled.end());
  double increase = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 1; i < scaled.size(); ++i) {
    increase = std::max(increase, scaled[i] / scaled[i - 1] - 1.0);
  }
  return {at_most("rate_bound", worst, bound,
                  "max over m of sqrt(m)||H_m(F) - F||_1 for N(0,1) against "
                  "int sqrt(t(1-t)) dQ; " + values.str()),
          at_most("rate_monotone", increase, 0.02,
                  "largest relative increase of sqrt(m)||H_m(F) - F||_1 between consecutive m")};
}

namespace {

CheckResult decreasing_medians(const std::string& name, const std::vector<double>& medians,
                               const std::vector<int>& ns) {
  double ratio = -std::numeric_limits<double>::infinity();
  std::ostringstream d;
  for (std::size_t i = 0; i < medians.size(); ++i) {
    d << (i ? ", " : "") << "n=" << ns[i] << ": " << fmt(medians[i]);
    if (i) ratio = std::max(ratio, medians[i] / medians[i - 1]);
  }
  return {name, ratio, 1.0, ratio < 1.0,
          "largest ratio of consecutive medians, pass when < 1; " + d.str()};
}

}  // namespace

CheckResult check_quantile_consistency(std::uint64_t seed, int reps) {
  const auto& f = standard_normal();
  const std::vector<int> ns{50, 200, 800};
  std::vector<double> medians;
  for (int n : ns) {
    std::vector<double> v;
    for (int r = 0; r < reps; ++r) {
      Rng rng(derive_stream(seed, {kQuantileTrend, static_cast<std::uint64_t>(n),
                                   static_cast<std::uint64_t>(r)}));
      const Sample s = normal_sample(rng, n);
      // The quantile function of F_{n,m} is I_m(Q_n), so its quantile-domain
      // L1 distance to Q is W_1.
      v.push_back(wasserstein_step_cont(ehcdf(s, n), *f, 1.0));
    }
    medians.push_back(median(v));
  }
  return decreasing_medians("quantile_consistency", medians, ns);
}

CheckResult check_ehcdf_consistency(std::uint64_t seed, int reps) {
  const auto& f = standard_normal();
  const std::vector<int> ns{50, 200, 800};
  std::vector<double> medians;
  for (int n : ns) {
    std::vector<double> v;
    for (int r = 0; r < reps; ++r) {
      Rng rng(derive_stream(seed, {kEhcdfTrend, static_cast<std::uint64_t>(n),
                                   static_cast<std::uint64_t>(r)}));
      v.push_back(lp_distance_step_cont(ehcdf(normal_sample(rng, n), n), *f, 1.0));
    }
    medians.push_back(median(v));
  }
  return decreasing_medians("ehcdf_consistency", medians, ns);
}

CheckResult check_fixed_m_limit(std::uint64_t seed, int reps, int bridges) {
  const auto& f = standard_normal();
  const int n = 2000;
  const int m = 5;
  const StepCdf fm = hoeffding_cdf(mu_true(*f, m));
  std::vector<double> stat;
  for (int r = 0; r < reps; ++r) {
    Rng rng(derive_stream(seed, {kFixedM, static_cast<std::uint64_t>(r)}));
    stat.push_back(std::sqrt(static_cast<double>(n)) *
                   lp_distance_step_step(ehcdf(normal_sample(rng, n), m), fm, 1.0));
  }
  Rng lrng(derive_stream(seed, {kFixedM, 1ULL << 40}));
  const auto lim = limit_statistic_sample(*f, m, LimitKind::sum_abs_L1, bridges, lrng);
  return at_most("fixed_m_limit_L1", ks_two_sample(stat, lim), 0.08,
                 "N(0,1), n=2000, m=5: " + ks_detail(stat.size(), lim.size()));
}

std::vector<CheckResult> check_fixed_m_power_limits(std::uint64_t seed, int reps, int bridges) {
  const auto& f = standard_normal();
  const int n = 2000;
  const int m = 5;
  const double nd = static_cast<double>(n);
  const StepCdf fm = hoeffding_cdf(mu_true(*f, m));
  std::vector<double> lp;
  std::vector<double> wp;
  for (int r = 0; r < reps; ++r) {
    Rng rng(derive_stream(seed, {kFixedMPower, static_cast<std::uint64_t>(r)}));
    const StepCdf h = ehcdf(normal_sample(rng, n), m);
    lp.push_back(std::sqrt(nd) * std::pow(lp_distance_step_step(h, fm, 2.0), 2.0));
    wp.push_back(nd * std::pow(wasserstein_step_step(h, fm, 2.0), 2.0));
  }
  Rng lrng(derive_stream(seed, {kFixedMPower, 1ULL << 40}));
  const auto lim_lp = limit_statistic_sample(*f, m, LimitKind::sum_abs_Lp, bridges, lrng, 2.0);
  const auto lim_wp = limit_statistic_sample(*f, m, LimitKind::wp_power, bridges, lrng, 2.0);
  return {at_most("fixed_m_limit_L2", ks_two_sample(lp, lim_lp), 0.08,
                  "sqrt(n)||.||_2^2 vs m^-2 sum|Z_j|: " + ks_detail(lp.size(), lim_lp.size())),
          at_most("fixed_m_limit_W2", ks_two_sample(wp, lim_wp), 0.08,
                  "n W_2^2 vs (1/m) sum Z_j^2: " + ks_detail(wp.size(), lim_wp.size()))};
}

std::vector<CheckResult> check_w2_joint_limit(std::uint64_t seed, int n, int reps, int bridges) {
  const auto& f = standard_uniform();
  const double nd = static_cast<double>(n);
  const StepCdf fm = hoeffding_cdf(mu_true(*f, n));
  std::vector<double> stat;
  for (int r = 0; r < reps; ++r) {
    Rng rng(derive_stream(seed, {kW2Joint, static_cast<std::uint64_t>(r)}));
    stat.push_back(nd * std::pow(wasserstein_step_step(ehcdf(law_sample(*f, rng, n), n), fm, 2.0),
                                 2.0));
  }
  Rng lrng(derive_stream(seed, {kW2Joint, 1ULL << 40}));
  const auto lim = limit_statistic_sample(*f, n, LimitKind::int_Q_squared, bridges, lrng);
  // Var int B^2 = 1/45.
  const double se = std::sqrt(1.0 / 45.0 / static_cast<double>(lim.size()));
  return {at_most("w2_joint_limit", ks_two_sample(stat, lim), 0.10,
                  "U[0,1], n=m=" + std::to_string(n) + ": " + ks_detail(stat.size(), lim.size())),
          at_most("w2_limit_mean", std::fabs(sample_mean(lim) - 1.0 / 6.0), 4.0 * se,
                  "|mean of int Q^2 draws - 1/6| against 4 standard errors")};
}

std::vector<CheckResult> check_bounded_support_limit(std::uint64_t seed, int reps,
                                                     int bridges) {
  const auto& f = standard_uniform();
  const int n = 10000;
  const int m = 25;
  const double p = 2.0;
  const StepCdf fm = hoeffding_cdf(mu_true(*f, m));
  const double scale = std::pow(static_cast<double>(m), p - 1.0) * std::sqrt(static_cast<double>(n));
  std::vector<double> stat;
  for (int r = 0; r < reps; ++r) {
    Rng rng(derive_stream(seed, {kBoundedSupport, static_cast<std::uint64_t>(r)}));
    const StepCdf h = ehcdf(law_sample(*f, rng, n), m);
    stat.push_back(scale * std::pow(lp_distance_step_step(h, fm, p), p));
  }
  Rng lrng(derive_stream(seed, {kBoundedSupport, 1ULL << 40}));
  const auto lim = limit_statistic_sample(*f, m, LimitKind::int_abs_Q, bridges, lrng);
  // The same statistic against its fixed-m law (1/m) sum |Z_j|, which is what
  // it approaches at this m; int |Q| is only reached as m grows.
  const auto fixed = limit_statistic_sample(*f, m, LimitKind::sum_abs_L1, bridges, lrng);
  return {at_most("bounded_support_limit", ks_two_sample(stat, lim), 0.12,
                  "U[0,1], n=10000, m=25, p=2 against int |Q|: " +
                      ks_detail(stat.size(), lim.size())),
          at_most("bounded_support_fixed_m", ks_two_sample(stat, fixed), 0.12,
                  "same statistic against (1/m) sum |Z_j|: " +
                      ks_detail(stat.size(), fixed.size()))};
}

CheckResult check_bootstrap_limit(std::uint64_t seed, int draws, int bridges) {
  const auto& f = standard_normal();
  const int n = 2000;
  const int m = 5;
  Rng srng(derive_stream(seed, {kBootstrap, 0}));
  const Sample s = normal_sample(srng, n);
  const StepCdf h = ehcdf(s, m);
  std::vector<double> stat;
  for (int b = 0; b < draws; ++b) {
    Rng rng(derive_stream(seed, {kBootstrap, 1, static_cast<std::uint64_t>(b)}));
    stat.push_back(std::sqrt(static_cast<double>(n)) *
                   lp_distance_step_step(bootstrap_ehcdf(s, m, rng), h, 1.0));
  }
  Rng lrng(derive_stream(seed, {kBootstrap, 2}));
  const auto lim = limit_statistic_sample(*f, m, LimitKind::sum_abs_L1, bridges, lrng);
  return at_most("bootstrap_limit", ks_two_sample(stat, lim), 0.10,
                 "one N(0,1) sample, n=2000, m=5: " + ks_detail(stat.size(), lim.size()));
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"identities", "contraction", "rates", "limits",
                                              "bootstrap"};
  return names;
}

std::vector<CheckResult> run_suite(const std::string& name, std::uint64_t seed) {
  std::vector<CheckResult> out;
  auto append = [&](std::vector<CheckResult> v) { out.insert(out.end(), v.begin(), v.end()); };
  if (name == "identities") {
    out.push_back(check_moment_identities(seed));
    out.push_back(check_closure(seed));
  } else if (name == "contraction") {
    out.push_back(check_contraction(seed));
    out.push_back(check_quantile_operator_bound(seed));
  } else if (name == "rates") {
    append(check_rate_bound());
    out.push_back(check_quantile_consistency(seed));
    out.push_back(check_ehcdf_consistency(seed));
  } else if (name == "limits") {
    out.push_back(check_fixed_m_limit(seed));
    append(check_fixed_m_power_limits(seed));
    append(check_w2_joint_limit(seed));
    append(check_bounded_support_limit(seed));
  } else if (name == "bootstrap") {
    out.push_back(check_bootstrap_limit(seed));
  } else {
    throw std::invalid_argument("unknown suite \"" + name + "\"");
  }
  return out;
}

void write_report_csv(std::ostream& out, const std::vector<CheckResult>& checks) {
  CsvWriter w(out);
  w.row({"check", "measured", "threshold", "pass", "detail"});
  for (const auto& c : checks) {
    w.row({c.name, fmt(c.measured), fmt(c.threshold), c.pass ? "1" : "0", c.detail});
  }
}

}  // namespace ehcdf

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "ehcdf/cdf_model.hpp"
#include "ehcdf/hoeffding.hpp"
#include "ehcdf/l_functionals.hpp"
#include "ehcdf/special_fn.hpp"
#include "generators.hpp"

using namespace ehcdf;

TEST(MuHat, HandExamples) {
  const Sample s({0.0, 1.0});
  const auto mu = mu_hat(s, 2);
  ASSERT_EQ(mu.mu.size(), 2u);
  EXPECT_NEAR(mu.mu[0], 0.25, 1e-15);
  EXPECT_NEAR(mu.mu[1], 0.75, 1e-15);
  const auto m1 = mu_hat(Sample({3.0, -1.0, 7.0, 2.0}), 1);
  EXPECT_NEAR(m1.mu[0], 2.75, 1e-14);
  for (double v : mu_hat(Sample({4.5}), 9).mu) EXPECT_EQ(v, 4.5);
}

TEST(MuHat, MatchesDirectIncrements) {
  for (int c = 0; c < 300; ++c) {
    Rng rng = testgen::case_rng(20, c);
    const Sample s = testgen::sample(rng, 1, 60);
    const int m = testgen::int_between(rng, 1, 400);
    const auto fast = mu_hat(s, m);
    const auto direct = mu_hat_direct(s, m);
    double scale = 1.0;
    for (double v : s.values()) scale = std::max(scale, std::fabs(v));
    for (int j = 0; j < m; ++j) {
      EXPECT_NEAR(fast.mu[j], direct.mu[j], 1e-12 * scale) << "case " << c << " j=" << j + 1;
    }
  }
}

TEST(MuHat, MonotoneAndMeanPreserving) {
  for (int c = 0; c < 300; ++c) {
    Rng rng = testgen::case_rng(21, c);
    const Sample s = testgen::sample(rng, 1, 200);
    const int m = testgen::int_between(rng, 1, 3000);
    const auto mu = mu_hat(s, m);
    double sum = 0.0;
    for (int j = 0; j < m; ++j) {
      if (j) {
        EXPECT_LE(mu.mu[j - 1], mu.mu[j]);
      }
      sum += mu.mu[j];
    }
    EXPECT_NEAR(sum / m, s.mean(), 1e-10);
    EXPECT_NEAR(ehcdf::ehcdf(s, m).mean(), s.mean(), 1e-10);
  }
}

TEST(MuTrue, ClosedForms) {
  const auto u = parse_distribution("uniform(0,1)");
  const auto mu = mu_true(*u, 4);
  for (int j = 0; j < 4; ++j) EXPECT_DOUBLE_EQ(mu.mu[j], (j + 1) / 5.0);

  const auto n = parse_distribution("normal(0,1)");
  const auto m2 = mu_true(*n, 2);
  EXPECT_NEAR(m2.mu[0], -1.0 / std::sqrt(std::numbers::pi), 1e-9);
  EXPECT_NEAR(m2.mu[1], 1.0 / std::sqrt(std::numbers::pi), 1e-9);
  EXPECT_NEAR(mu_true(*n, 3).mu[2], 0.846284375321634430, 1e-9);

  const auto e = parse_distribution("exponential(1)");
  const auto em = mu_true(*e, 2);
  EXPECT_NEAR(em.mu[0], 0.5, 1e-9);
  EXPECT_NEAR(em.mu[1], 1.5, 1e-9);

  // E max of two t_2 variables = pi / (2 sqrt 2).
  EXPECT_NEAR(mu_true(*parse_distribution("t(2)"), 2).mu[1], 1.11072073453959154764, 1e-8);
}

TEST(MuTrue, MonotoneAndMeanPreserving) {
  for (const char* name : {"normal(0,1)", "lognormal(0,1)", "gamma(0.5,1)", "t(3)",
                           "mixture(normal(-5,1),weibull(0.5,1))", "binomial(10,0.5)"}) {
    const auto f = parse_distribution(name);
    for (int m : {1, 7, 64}) {
      const auto mu = mu_true(*f, m);
      double sum = 0.0;
      for (int j = 0; j < m; ++j) {
        if (j) {
          EXPECT_LE(mu.mu[j - 1], mu.mu[j]) << name;
        }
        sum += mu.mu[j];
      }
      EXPECT_NEAR(sum / m, f->mean(), 1e-7 * std::max(1.0, std::fabs(f->mean()))) << name;
    }
  }
}

TEST(HoeffdingCdf, StructuralCases) {
  const StepCdf pm = hoeffding_cdf(ExpectedOrderStats{3, {2.0, 2.0, 2.0}});
  EXPECT_EQ(pm.size(), 1u);
  const StepCdf h = ehcdf::ehcdf(Sample({0.0, 1.0}), 2);
  ASSERT_EQ(h.size(), 2u);
  EXPECT_NEAR(h.locations()[0], 0.25, 1e-15);
  EXPECT_NEAR(h.locations()[1], 0.75, 1e-15);
  const StepCdf one = ehcdf::ehcdf(Sample({1.0, 2.0, 6.0}), 1);
  ASSERT_EQ(one.size(), 1u);
  EXPECT_DOUBLE_EQ(one.locations()[0], 3.0);
}

TEST(HoeffdingCdf, ConvergesToEcdfForLargeM) {
  Rng rng = testgen::case_rng(22, 0);
  std::vector<double> x(30);
  for (auto& v : x) v = rng.normal();
  const Sample s(x);
  const StepCdf fn = ecdf(s);
  double prev = INFINITY;
  for (int m : {30, 300, 3000, 30000}) {
    const double d = lp_distance_step_step(ehcdf::ehcdf(s, m), fn, 1.0);
    EXPECT_LT(d, prev);
    prev = d;
  }
  EXPECT_LT(prev, 0.02);
}

TEST(IM, ConstantsLinearityAndDuality) {
  // Default options: relative tolerance 1e-8.
  const auto c = i_m_apply([](UnitPoint) { return 2.5; }, 6);
  for (double v : c.values()) EXPECT_NEAR(v, 2.5, 1e-9);
  const auto id = i_m_apply([](UnitPoint u) { return u.t; }, 6);
  for (int j = 0; j < 6; ++j) EXPECT_NEAR(id.values()[j], (j + 1) / 7.0, 1e-9);

  for (int k = 0; k < 20; ++k) {
    Rng rng = testgen::case_rng(23, k);
    const auto h1 = WeightFunction::polynomial(testgen::polynomial(rng, 6));
    const auto h2 = WeightFunction::polynomial(testgen::polynomial(rng, 6));
    const double a = rng.normal();
    const double b = rng.normal();
    const int m = testgen::int_between(rng, 1, 30);
    const auto l = i_m_apply([&](UnitPoint u) { return a * h1.value(u.t) + b * h2.value(u.t); }, m);
    const auto r1 = i_m_apply([&](UnitPoint u) { return h1.value(u.t); }, m);
    const auto r2 = i_m_apply([&](UnitPoint u) { return h2.value(u.t); }, m);
    for (int j = 0; j < m; ++j) {
      EXPECT_NEAR(l.values()[j], a * r1.values()[j] + b * r2.values()[j], 1e-10);
    }
  }

  // Quantile of H_m(F) equals I_m(Q).
  const auto f = parse_distribution("gamma(2,1)");
  const int m = 9;
  const StepCdf hm = hoeffding_cdf(mu_true(*f, m));
  const auto iq = i_m_apply([&](UnitPoint u) { return f->quantile_at(u); }, m);
  for (int k = 1; k < 100; ++k) {
    const double p = k / 100.0;
    EXPECT_NEAR(hm.quantile(p), iq(p), 1e-8);
  }
}

TEST(PmWeight, Identities) {
  const auto one = p_m_weight(WeightFunction::polynomial({1.0}), 7);
  for (double u : {0.01, 0.3, 0.9}) EXPECT_NEAR(one.value(u), 1.0, 1e-12);
  const auto w = WeightFunction::polynomial({0.3, -2.0, 5.0});
  const auto p1 = p_m_weight(w, 1);
  for (double u : {0.2, 0.7}) EXPECT_NEAR(p1.value(u), w.integral(0.0, 1.0), 1e-12);
  // P_m[w_1] = ((m-1)/m) w_1 and
  // P_m[w_3] = ((m-1)(m-2)(m-3)/m^3) w_3 - ((m-1)/m^3) w_1.
  const auto w1 = WeightFunction::shifted_legendre(1);
  const auto w3 = WeightFunction::shifted_legendre(3);
  for (int m : {2, 5, 11}) {
    const double md = m;
    const auto q1 = p_m_weight(w1, m);
    const auto q3 = p_m_weight(w3, m);
    for (double u : {0.05, 0.4, 0.77}) {
      EXPECT_NEAR(q1.value(u), (md - 1) / md * w1.value(u), 1e-11);
      EXPECT_NEAR(q3.value(u),
                  (md - 1) * (md - 2) * (md - 3) / (md * md * md) * w3.value(u) -
                      (md - 1) / (md * md * md) * w1.value(u),
                  1e-11);
    }
  }
}

TEST(MFromGamma, Rounding) {
  EXPECT_EQ(m_from_gamma(100, 1.0), 100);
  EXPECT_EQ(m_from_gamma(100, 1.1), 158);
  EXPECT_EQ(m_from_gamma(25, 1.5), 125);
  EXPECT_EQ(m_from_gamma(1, 1.2), 1);
}

TEST(MStepFunction, Norms) {
  const MStepFunction f({-1.0, 3.0});
  EXPECT_EQ(f(0.5), -1.0);
  EXPECT_EQ(f(0.51), 3.0);
  EXPECT_NEAR(f.lp_norm(1.0), 2.0, 1e-15);
  EXPECT_NEAR(f.lp_norm(2.0), std::sqrt(5.0), 1e-15);
}

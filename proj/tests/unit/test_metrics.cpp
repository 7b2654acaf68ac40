#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include "ehcdf/cdf_model.hpp"
#include "ehcdf/hoeffding.hpp"
#include "ehcdf/metrics.hpp"
#include "generators.hpp"

using namespace ehcdf;

TEST(Wasserstein, StepStepCases) {
  const StepCdf a = StepCdf::point_mass(-1.0);
  const StepCdf b = StepCdf::point_mass(2.0);
  for (double p : {1.0, 2.0, 3.5}) {
    EXPECT_NEAR(wasserstein_step_step(a, b, p), 3.0, 1e-14);
    EXPECT_EQ(wasserstein_step_step(a, a, p), 0.0);
  }
  // Equal-mass case: W_p^p = (1/m) sum |mu_j - nu_j|^p.
  for (int c = 0; c < 50; ++c) {
    Rng rng = testgen::case_rng(40, c);
    const int m = testgen::int_between(rng, 1, 30);
    std::vector<double> x(m);
    std::vector<double> y(m);
    for (int j = 0; j < m; ++j) {
      x[j] = rng.normal();
      y[j] = rng.normal();
    }
    std::sort(x.begin(), x.end());
    std::sort(y.begin(), y.end());
    double s = 0.0;
    for (int j = 0; j < m; ++j) s += std::pow(std::fabs(x[j] - y[j]), 2.0);
    EXPECT_NEAR(std::pow(wasserstein_step_step(StepCdf::equal_mass(x), StepCdf::equal_mass(y), 2.0), 2.0),
                s / m, 1e-12);
  }
}

TEST(Wasserstein, StepContHandValues) {
  const auto u = parse_distribution("uniform(0,1)");
  EXPECT_NEAR(wasserstein_step_cont(hoeffding_cdf(mu_true(*u, 1)), *u, 1.0), 0.25, 1e-10);
  EXPECT_NEAR(std::pow(wasserstein_step_cont(StepCdf::point_mass(0.5), *u, 2.0), 2.0), 1.0 / 12.0,
              1e-10);
  // H_m of U[0,1]: sum_j int_{(j-1)/m}^{j/m} |j/(m+1) - t| dt.
  for (int m : {2, 5, 13}) {
    double ref = 0.0;
    for (int j = 1; j <= m; ++j) {
      const double c = j / (m + 1.0);
      const double a = (j - 1.0) / m;
      const double b = static_cast<double>(j) / m;
      ref += 0.5 * ((c - a) * (c - a) + (b - c) * (b - c));
    }
    EXPECT_NEAR(wasserstein_step_cont(hoeffding_cdf(mu_true(*u, m)), *u, 1.0), ref, 1e-10);
  }
}

TEST(Wasserstein, W1EqualsL1) {
  const char* laws[] = {"normal(0,1)", "gamma(2,1)", "t(3)", "uniform(-2,2)", "logistic(0,1)"};
  for (int c = 0; c < 200; ++c) {
    Rng rng = testgen::case_rng(41, c);
    const auto f = parse_distribution(laws[c % 5]);
    std::vector<double> x(testgen::int_between(rng, 1, 30));
    for (auto& v : x) v = f->sample(rng);
    const Sample s(x);
    const StepCdf g = c % 2 ? ecdf(s) : ehcdf::ehcdf(s, testgen::int_between(rng, 1, 50));
    EXPECT_NEAR(wasserstein_step_cont(g, *f, 1.0), lp_distance_step_cont(g, *f, 1.0), 1e-8)
        << laws[c % 5] << " case " << c;
  }
}

TEST(Wasserstein, MonotoneInP) {
  const auto f = parse_distribution("normal(0,1)");
  for (int c = 0; c < 30; ++c) {
    Rng rng = testgen::case_rng(42, c);
    std::vector<double> x(20);
    for (auto& v : x) v = f->sample(rng);
    const StepCdf g = ecdf(Sample(x));
    const double w1 = wasserstein_step_cont(g, *f, 1.0);
    const double w2 = wasserstein_step_cont(g, *f, 2.0);
    const double w3 = wasserstein_step_cont(g, *f, 3.0);
    EXPECT_LE(w1, w2 + 1e-10);
    EXPECT_LE(w2, w3 + 1e-10);
  }
}

TEST(Wasserstein, DivergentTailIsReported) {
  // E X^2 is infinite for t_2, so W_2 against it diverges.
  const auto t2 = parse_distribution("t(2)");
  EXPECT_THROW(wasserstein_step_cont(StepCdf::point_mass(0.0), *t2, 2.0), QuadratureError);
}

TEST(Wasserstein, ConsistencyTrend) {
  const auto f = parse_distribution("normal(0,1)");
  double prev = INFINITY;
  for (int n : {50, 200, 800}) {
    std::vector<double> d;
    for (int r = 0; r < 60; ++r) {
      Rng rng = testgen::case_rng(43, n * 1000 + r);
      std::vector<double> x(n);
      for (auto& v : x) v = f->sample(rng);
      d.push_back(wasserstein_step_cont(ehcdf::ehcdf(Sample(x), n), *f, 1.0));
    }
    std::nth_element(d.begin(), d.begin() + 30, d.end());
    EXPECT_LT(d[30], prev);
    prev = d[30];
  }
}

TEST(Wasserstein, AtomsInsideTheTails) {
  // The atom at 4 sits inside the upper quantile tail beyond the last jump.
  const auto f = parse_distribution("mixture(normal(0,1),binomial(4,0.5))");
  const StepCdf g = ecdf(Sample({-1.0, 0.0, 1.0, 3.0}));
  EXPECT_NEAR(wasserstein_step_cont(g, *f, 1.0), lp_distance_step_cont(g, *f, 1.0), 1e-8);
  EXPECT_GT(wasserstein_step_cont(g, *f, 2.0), 0.0);
}

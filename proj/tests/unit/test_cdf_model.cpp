#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <sstream>

#include "ehcdf/cdf_model.hpp"
#include "ehcdf/distributions.hpp"
#include "ehcdf/metrics.hpp"
#include "generators.hpp"

using namespace ehcdf;

namespace {

// Riemann oracle for ||G - H||_p on a uniform grid.
double riemann_lp(const std::function<double(double)>& g, const std::function<double(double)>& h,
                  double a, double b, double p, int cells) {
  const double dx = (b - a) / cells;
  double s = 0.0;
  for (int i = 0; i < cells; ++i) {
    const double x = a + (i + 0.5) * dx;
    s += std::pow(std::fabs(g(x) - h(x)), p) * dx;
  }
  return std::pow(s, 1.0 / p);
}

// Midpoint rule for int |g - h| with cells uniform in asinh(x), which keeps
// long heavy tails as well resolved as the centre.
double asinh_midpoint_l1(const std::function<double(double)>& g,
                         const std::function<double(double)>& h, double a, double b, int cells) {
  const double ya = std::asinh(a);
  const double dy = (std::asinh(b) - ya) / cells;
  double s = 0.0;
  for (int i = 0; i < cells; ++i) {
    const double y = ya + (i + 0.5) * dy;
    const double x = std::sinh(y);
    s += std::fabs(g(x) - h(x)) * std::cosh(y) * dy;
  }
  return s;
}

}  // namespace

TEST(Sample, RejectsBadInput) {
  EXPECT_THROW(Sample({}), std::invalid_argument);
  EXPECT_THROW(Sample({1.0, std::nan("")}), std::invalid_argument);
  EXPECT_THROW(Sample({1.0, INFINITY}), std::invalid_argument);
}

TEST(StepCdf, EcdfMergesTies) {
  const StepCdf g = ecdf(Sample({1.0, 1.0, 3.0}));
  ASSERT_EQ(g.size(), 2u);
  EXPECT_DOUBLE_EQ(g.masses()[0], 2.0 / 3.0);
  EXPECT_EQ(g.cumulative().back(), 1.0);
  const StepCdf one = ecdf(Sample({2.0}));
  EXPECT_EQ(one.size(), 1u);
  EXPECT_EQ(one.masses()[0], 1.0);
}

TEST(StepCdf, EvaluationAndQuantile) {
  const StepCdf g = ecdf(Sample({0.0, 1.0}));
  EXPECT_EQ(g.eval(0.0), 0.5);
  EXPECT_EQ(g.eval(-1.0), 0.0);
  EXPECT_EQ(g.eval(0.999), 0.5);
  EXPECT_EQ(g.eval_left(1.0), 0.5);
  EXPECT_EQ(g.quantile(0.5), 0.0);
  EXPECT_EQ(g.quantile(0.6), 1.0);
  EXPECT_THROW(g.quantile(0.0), std::domain_error);
  const StepCdf h({1.0, 2.0}, {0.25, 0.75});
  EXPECT_EQ(h.quantile(0.25), 1.0);
  EXPECT_EQ(StepCdf::point_mass(4.0).quantile(0.3), 4.0);
  EXPECT_THROW(StepCdf({1.0, 2.0}, {0.5, 0.6}), std::invalid_argument);
}

TEST(StepCdf, GaloisProperty) {
  for (int c = 0; c < 200; ++c) {
    Rng rng = testgen::case_rng(10, c);
    const StepCdf g = testgen::step_cdf(rng, 10);
    for (int k = 1; k <= 100; ++k) {
      const double p = k / 100.0;
      EXPECT_GE(g.eval(g.quantile(p)), p - 1e-15);
    }
    for (double x : g.locations()) EXPECT_LE(g.quantile(g.eval(x)), x);
  }
}

TEST(StepCdf, CsvRoundTrip) {
  const StepCdf g({-1.5, 0.25, 1e-300}, {0.2, 0.3, 0.5});
  std::stringstream io;
  g.write_csv(io);
  const StepCdf back = StepCdf::read_csv(io);
  EXPECT_EQ(back.locations(), g.locations());
  EXPECT_EQ(back.masses(), g.masses());
}

TEST(LpStepStep, TrivialCases) {
  const StepCdf a = StepCdf::point_mass(0.0);
  const StepCdf b = StepCdf::point_mass(1.0);
  EXPECT_EQ(lp_distance_step_step(a, a, 1.0), 0.0);
  EXPECT_DOUBLE_EQ(lp_distance_step_step(a, b, 1.0), 1.0);
  EXPECT_DOUBLE_EQ(lp_distance_step_step(a, b, 2.0), 1.0);
  EXPECT_DOUBLE_EQ(lp_distance_step_step(a, b, kSupNorm), 1.0);
}

TEST(LpStepStep, RiemannOracle) {
  for (int c = 0; c < 20; ++c) {
    Rng rng = testgen::case_rng(11, c);
    const StepCdf g = testgen::step_cdf(rng, 5);
    const StepCdf h = testgen::step_cdf(rng, 5);
    const double lo = std::min(g.locations().front(), h.locations().front()) - 1.0;
    const double hi = std::max(g.locations().back(), h.locations().back()) + 1.0;
    for (double p : {1.0, 2.0}) {
      const double ref = riemann_lp([&](double x) { return g.eval(x); },
                                    [&](double x) { return h.eval(x); }, lo, hi, p, 1000000);
      EXPECT_NEAR(lp_distance_step_step(g, h, p), ref, 1e-5) << "case " << c;
    }
  }
}

TEST(LpStepStep, MetricAxiomsAndWassersteinIdentity) {
  for (int c = 0; c < 200; ++c) {
    Rng rng = testgen::case_rng(12, c);
    const StepCdf f = testgen::step_cdf(rng, 8);
    const StepCdf g = testgen::step_cdf(rng, 8);
    const StepCdf h = testgen::step_cdf(rng, 8);
    for (double p : {1.0, 2.0, 3.0, kSupNorm}) {
      const double fg = lp_distance_step_step(f, g, p);
      EXPECT_NEAR(fg, lp_distance_step_step(g, f, p), 1e-12);
      EXPECT_LE(fg, lp_distance_step_step(f, h, p) + lp_distance_step_step(h, g, p) + 1e-9);
    }
    EXPECT_NEAR(lp_distance_step_step(f, g, 1.0), wasserstein_step_step(f, g, 1.0), 1e-9);
  }
}

TEST(LpStepCont, HandValues) {
  const auto u = parse_distribution("uniform(0,1)");
  EXPECT_NEAR(lp_distance_step_cont(ecdf(Sample({0.0})), *u, 1.0), 0.5, 1e-10);
  const auto n = parse_distribution("normal(0,1)");
  EXPECT_NEAR(lp_distance_step_cont(StepCdf::point_mass(0.0), *n, kSupNorm), 0.5, 1e-15);
  // Point mass at 0 vs N(0,1): int |1{x>=0} - Phi| = 2 int_0^inf (1 - Phi) = 2 phi(0).
  EXPECT_NEAR(lp_distance_step_cont(StepCdf::point_mass(0.0), *n, 1.0),
              2.0 / std::sqrt(2.0 * std::numbers::pi), 1e-9);
}

TEST(LpStepCont, DenseGridOracle) {
  for (const char* name : {"normal(0,1)", "uniform(-1,2)", "t(3)", "weibull(0.5,1)",
                           "mixture(normal(0,1),binomial(4,0.5))"}) {
    const auto f = parse_distribution(name);
    for (int c = 0; c < 4; ++c) {
      Rng rng = testgen::case_rng(13, c);
      std::vector<double> x(8);
      for (auto& v : x) v = f->sample(rng);
      const StepCdf g = ecdf(Sample(x));
      const double lo = std::min(g.locations().front(), f->quantile(1e-12)) - 0.5;
      const double hi = std::max(g.locations().back(), f->quantile_upper(1e-12)) + 0.5;
      auto gf = [&](double t) { return g.eval(t); };
      auto ff = [&](double t) { return f->cdf(t); };
      // Midpoint rule on every segment between jumps, so no cell straddles one.
      std::vector<double> cuts = g.locations();
      for (double t : f->atoms()) cuts.push_back(t);
      cuts.push_back(lo);
      cuts.push_back(hi);
      std::sort(cuts.begin(), cuts.end());
      double l1 = 0.0;
      for (std::size_t k = 0; k + 1 < cuts.size(); ++k) {
        if (cuts[k + 1] > cuts[k]) l1 += asinh_midpoint_l1(gf, ff, cuts[k], cuts[k + 1], 200000);
      }
      double got = NAN;
      try {
        got = lp_distance_step_cont(g, *f, 1.0);
      } catch (const std::exception& e) {
        ADD_FAILURE() << name << " case " << c << ": " << e.what();
        continue;
      }
      EXPECT_NEAR(got, l1, 2e-5) << name << " case " << c;
      double sup = 0.0;
      for (double t : g.locations()) {
        sup = std::max({sup, std::fabs(g.eval(t) - f->cdf(t)),
                        std::fabs(g.eval_left(t) - f->cdf_left(t))});
      }
      for (double t : f->atoms()) {
        sup = std::max({sup, std::fabs(g.eval(t) - f->cdf(t)),
                        std::fabs(g.eval_left(t) - f->cdf_left(t))});
      }
      EXPECT_NEAR(lp_distance_step_cont(g, *f, kSupNorm), sup, 1e-9) << name;
    }
  }
}

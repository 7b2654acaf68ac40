#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "ehcdf/simulation.hpp"

using namespace ehcdf;

namespace {

std::string slurp(const std::filesystem::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

const char* kSmall = R"J({
  "seed": 11, "replications": 40,
  "experiments": [{"distribution": "normal(0,1)", "n": [20, 30], "gamma": [1, 1.2],
                   "estimators": ["ecdf", "ehcdf", "ekcdf"],
                   "metrics": ["L1", "L2", "Linf", "W1"],
                   "mse_probability_grid": [0.25, 0.5, 0.75]}]})J";

}  // namespace

TEST(Config, DefaultsAndWarnings) {
  const auto cfg = parse_config(R"J({"experiments": [{"distribution": "t(3)", "n": [10],
                                    "gamma": [0.9, 1.0]}]})J");
  EXPECT_EQ(cfg.seed, 1u);
  EXPECT_EQ(cfg.replications, 1000);
  EXPECT_EQ(cfg.output_dir, "results");
  ASSERT_EQ(cfg.experiments.size(), 1u);
  EXPECT_EQ(cfg.experiments[0].estimators.size(), 2u);
  EXPECT_EQ(cfg.experiments[0].metrics.size(), 3u);
  EXPECT_EQ(cfg.warnings.size(), 1u);
}

TEST(Config, Rejections) {
  EXPECT_THROW(parse_config("{"), std::invalid_argument);
  EXPECT_THROW(parse_config(R"J({"bogus": 1, "experiments": []})J"), std::invalid_argument);
  EXPECT_THROW(parse_config(R"J({"experiments": [{"distribution": "cauchy(0,1)", "n": [5]}]})J"),
               std::invalid_argument);
  EXPECT_THROW(parse_config(R"J({"experiments": [{"distribution": "normal(0,1)", "n": []}]})J"),
               std::invalid_argument);
  EXPECT_THROW(parse_config(R"J({"experiments": [{"distribution": "normal(0,1)", "n": [5],
                                 "metrics": ["L3"]}]})J"),
               std::invalid_argument);
  EXPECT_THROW(parse_config(R"J({"experiments": [{"distribution": "normal(0,1)", "n": [5],
                                 "mse_probability_grid": [0.0]}]})J"),
               std::invalid_argument);
}

TEST(Simulation, EcdfOnlyRatioIsHundred) {
  auto cfg = parse_config(R"J({"replications": 20, "experiments": [{"distribution":
      "uniform(0,1)", "n": [15], "estimators": ["ecdf"]}]})J");
  const auto r = run_simulation(cfg, 1);
  ASSERT_EQ(r.summary.size(), 3u);
  for (const auto& row : r.summary) {
    EXPECT_DOUBLE_EQ(row.ratio, 100.0);
    EXPECT_EQ(row.used, 20);
  }
  EXPECT_EQ(r.records.size(), 60u);
}

TEST(Simulation, DeterministicAcrossWorkerCounts) {
  const auto cfg = parse_config(kSmall);
  const auto a = run_simulation(cfg, 1);
  const auto b = run_simulation(cfg, 3);
  ASSERT_EQ(a.records.size(), b.records.size());
  for (std::size_t i = 0; i < a.records.size(); ++i) {
    EXPECT_EQ(a.records[i].value, b.records[i].value);
    EXPECT_EQ(a.records[i].status, b.records[i].status);
  }
  ASSERT_EQ(a.summary.size(), b.summary.size());
  for (std::size_t i = 0; i < a.summary.size(); ++i) {
    // Cells where every replication failed carry NaN on both sides.
    const double x = a.summary[i].ratio;
    const double y = b.summary[i].ratio;
    EXPECT_TRUE(x == y || (std::isnan(x) && std::isnan(y))) << i;
  }
}

TEST(Simulation, KernelWassersteinIsUnsupported) {
  const auto r = run_simulation(parse_config(kSmall), 1);
  bool seen = false;
  for (const auto& rec : r.records) {
    if (rec.estimator == "ekcdf" && rec.metric == "W1") {
      EXPECT_FALSE(rec.value.has_value());
      seen = true;
    }
  }
  EXPECT_TRUE(seen);
  for (const auto& row : r.mse) {
    if (row.estimator == "ecdf") {
      EXPECT_DOUBLE_EQ(row.ratio, 1.0);
    }
  }
}

TEST(Simulation, WritesOutputs) {
  auto cfg = parse_config(kSmall);
  const auto dir = std::filesystem::temp_directory_path() / "ehcdf_sim_test";
  std::filesystem::remove_all(dir);
  cfg.output_dir = dir.string();
  write_outputs(cfg, run_simulation(cfg, 2));
  EXPECT_TRUE(std::filesystem::exists(dir / "records.csv"));
  const std::string summary = slurp(dir / "summary.csv");
  EXPECT_EQ(summary.rfind("distribution,estimator,gamma,n,metric,used,mean_error", 0), 0u);
  EXPECT_TRUE(std::filesystem::exists(dir / "mse_normal_0_1.csv"));
  EXPECT_NE(slurp(dir / "mse_normal_0_1.svg").find("<svg"), std::string::npos);
  std::filesystem::remove_all(dir);
}

TEST(Simulation, SanitizeFilename) {
  EXPECT_EQ(sanitize_filename("normal(0,1)"), "normal_0_1");
  EXPECT_EQ(sanitize_filename("mixture(normal(-5,1),weibull(0.5,1))"),
            "mixture_normal_-5_1_weibull_0.5_1");
  EXPECT_EQ(sanitize_filename("(("), "dist");
}

#ifndef EHCDF_SIMULATION_HPP
#define EHCDF_SIMULATION_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace ehcdf {

enum class Estimator { ecdf, ehcdf, ekcdf };
enum class Metric { L1, L2, Linf, W1, W2 };

std::string to_string(Estimator e);
std::string to_string(Metric m);

struct ExperimentSpec {
  std::string distribution;  // parse_distribution syntax
  std::vector<int> n;
  std::vector<double> gamma;  // orders m = round(n^gamma) for the EHCDF
  std::vector<Estimator> estimators;
  std::vector<Metric> metrics;
  std::vector<double> mse_probability_grid;
  std::optional<int> replications;
  std::optional<std::uint64_t> seed;
};

struct SimulationConfig {
  std::string output_dir = "results";
  std::uint64_t seed = 1;
  int replications = 1000;
  std::vector<ExperimentSpec> experiments;
  std::vector<std::string> warnings;  // filled by parse_config
};

/// Parses the JSON schema
///   {"output_dir": str, "seed": int, "replications": int,
///    "experiments": [{"distribution": str, "n": [int], "gamma": [real],
///                     "estimators": [str], "metrics": [str],
///                     "mse_probability_grid": [real],
///                     "replications": int, "seed": int}]}
/// Unknown keys and invalid values throw std::invalid_argument.
SimulationConfig parse_config(const std::string& json_text);
SimulationConfig load_config(const std::string& path);

struct MetricRecord {
  std::string distribution;
  std::string estimator;
  std::optional<double> gamma;
  int n = 0;
  int replication = 0;
  std::string metric;
  std::optional<double> value;  // empty when the cell failed
  std::string status;           // "ok" or the failure message
};

struct SummaryRow {
  std::string distribution;
  std::string estimator;
  std::optional<double> gamma;
  int n = 0;
  std::string metric;
  int used = 0;  // paired replications with both values present
  double mean = 0.0;
  double mean_ecdf = 0.0;
  double ratio = 0.0;  // percent
  double se = 0.0;     // percentage points, delta method
  bool flagged = false;
};

struct MseRow {
  std::string distribution;
  std::string estimator;
  std::optional<double> gamma;
  int n = 0;
  double p = 0.0;
  double mse = 0.0;
  double mse_ecdf = 0.0;
  double ratio = 0.0;
};

struct SimulationResult {
  std::vector<MetricRecord> records;
  std::vector<SummaryRow> summary;
  std::vector<MseRow> mse;
};

/// EHCDF_WORKERS when set to a positive integer, else the hardware count.
int default_workers();

/// Runs every experiment with per-replication streams
/// derive_stream(seed, {experiment, n, replication}); the output does not
/// depend on `workers`.
SimulationResult run_simulation(const SimulationConfig& cfg, int workers);

void write_records_csv(const std::string& path, const std::vector<MetricRecord>& records);
void write_summary_csv(const std::string& path, const std::vector<SummaryRow>& rows);
/// Writes records.csv, summary.csv and mse_<distribution>.{csv,svg} into
/// cfg.output_dir (created when missing).
void write_outputs(const SimulationConfig& cfg, const SimulationResult& result);

std::string sanitize_filename(const std::string& s);

}  // namespace ehcdf

#endif  // EHCDF_SIMULATION_HPP

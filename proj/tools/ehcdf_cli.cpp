#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "ehcdf/cdf_model.hpp"
#include "ehcdf/csv.hpp"
#include "ehcdf/hoeffding.hpp"
#include "ehcdf/simulation.hpp"
#include "ehcdf/suites.hpp"

namespace {

using namespace ehcdf;

// First field of every row; a non-numeric first row is taken as a header.
std::vector<double> read_sample_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::vector<double> out;
  std::string line;
  for (std::size_t row = 0; std::getline(in, line); ++row) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::string field = line.substr(0, line.find(','));
    if (field.size() >= 2 && field.front() == '"' && field.back() == '"') {
      field = field.substr(1, field.size() - 2);
    }
    char* end = nullptr;
    const double v = std::strtod(field.c_str(), &end);
    const bool numeric = end != field.c_str() && *end == '\0';
    if (!numeric) {
      if (row == 0) continue;
      throw std::runtime_error(path + ": row " + std::to_string(row + 1) + " is not numeric");
    }
    out.push_back(v);
  }
  return out;
}

std::string expand_row_alias(const std::string& row) {
  if (row == "normal") return "normal(0,1)";
  if (row.size() > 1 && row[0] == 't' && row.find('(') == std::string::npos) {
    return "student_t(" + row.substr(1) + ")";
  }
  return row;
}

std::vector<std::string> split_list(const std::string& s) {
  // Split on commas outside parentheses so that "normal,mixture(a(1),b(2))" works.
  std::vector<std::string> out;
  std::string cur;
  int depth = 0;
  for (char c : s) {
    if (c == '(') ++depth;
    if (c == ')') --depth;
    if (c == ',' && depth == 0) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}

void print_warnings(const SimulationConfig& cfg) {
  for (const auto& w : cfg.warnings) std::cerr << "warning: " << w << '\n';
}

void print_summary(const SimulationResult& res) {
  std::printf("%-28s %-8s %-6s %5s %-5s %8s %6s\n", "distribution", "estim", "gamma", "n",
              "norm", "ratio%", "se");
  for (const auto& r : res.summary) {
    if (r.estimator == "ecdf") continue;
    std::printf("%-28s %-8s %-6s %5d %-5s %8.1f %6.2f%s\n", r.distribution.c_str(),
                r.estimator.c_str(), r.gamma ? format_real(*r.gamma).c_str() : "-", r.n,
                r.metric.c_str(), r.ratio, r.se, r.flagged ? " *" : "");
  }
}

int run_config(const SimulationConfig& cfg, int workers) {
  print_warnings(cfg);
  const SimulationResult res = run_simulation(cfg, workers > 0 ? workers : default_workers());
  write_outputs(cfg, res);
  print_summary(res);
  std::cout << "outputs written to " << cfg.output_dir << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Empirical Hoeffding CDF estimation and simulation"};
  app.require_subcommand(1);

  std::string config_path;
  int workers = 0;
  auto* run = app.add_subcommand("run", "Run the experiments declared in a JSON config");
  run->add_option("--config", config_path, "Config file")->required()->check(CLI::ExistingFile);
  run->add_option("--workers", workers, "Worker threads (default: EHCDF_WORKERS or core count)");

  std::string suite_name;
  std::uint64_t suite_seed = 20240501;
  std::string report_path;
  auto* suite = app.add_subcommand("suite", "Run an invariant or limit-law suite");
  suite->add_option("name", suite_name, "identities, contraction, rates, limits or bootstrap")
      ->required()
      ->check(CLI::IsMember(suite_names()));
  suite->add_option("--seed", suite_seed, "Root seed");
  suite->add_option("--report", report_path, "CSV report path (default: stdout)");

  std::string input_path;
  std::string out_path;
  int m = 0;
  double gamma = 0.0;
  auto* estimate = app.add_subcommand("estimate", "EHCDF atoms of a sample");
  estimate->add_option("--input", input_path, "CSV whose first column holds the sample")
      ->required()
      ->check(CLI::ExistingFile);
  auto* m_opt = estimate->add_option("--m", m, "Order m")->check(CLI::PositiveNumber);
  auto* g_opt = estimate->add_option("--gamma", gamma, "Use m = round(n^gamma)")
                    ->check(CLI::PositiveNumber);
  m_opt->excludes(g_opt);
  estimate->add_option("--out", out_path, "Output CSV (location,mass)")->required();

  std::string rows = "normal,t2";
  std::string ns = "25,50,100";
  int reps = 1000;
  std::uint64_t table_seed = 1;
  std::string table_out = "table_s1";
  auto* table = app.add_subcommand("table-s1", "Relative Lp errors for the real-line families");
  table->add_option("--rows", rows, "Distributions (normal, tNU or catalog expressions)");
  table->add_option("--n", ns, "Sample sizes");
  table->add_option("--reps", reps, "Replications")->check(CLI::PositiveNumber);
  table->add_option("--seed", table_seed, "Root seed");
  table->add_option("--out", table_out, "Output directory");
  table->add_option("--workers", workers, "Worker threads");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run) return run_config(load_config(config_path), workers);

    if (*suite) {
      const auto checks = run_suite(suite_name, suite_seed);
      if (report_path.empty()) {
        write_report_csv(std::cout, checks);
      } else {
        std::ofstream f(report_path, std::ios::binary);
        write_report_csv(f, checks);
      }
      bool ok = true;
      for (const auto& c : checks) {
        std::cerr << (c.pass ? "PASS " : "FAIL ") << c.name << ": " << format_real(c.measured)
                  << " (threshold " << format_real(c.threshold) << ")\n";
        ok = ok && c.pass;
      }
      return ok ? 0 : 1;
    }

    if (*estimate) {
      if (m_opt->count() == 0 && g_opt->count() == 0) {
        throw std::invalid_argument("estimate: give --m or --gamma");
      }
      const Sample s(read_sample_csv(input_path));
      const int order = m_opt->count() ? m : m_from_gamma(s.size(), gamma);
      std::ofstream f(out_path, std::ios::binary);
      if (!f) throw std::runtime_error("cannot write " + out_path);
      ehcdf::ehcdf(s, order).write_csv(f);
      std::cerr << "n=" << s.size() << " m=" << order << '\n';
      return 0;
    }

    if (*table) {
      nlohmann::json doc;
      doc["output_dir"] = table_out;
      doc["seed"] = table_seed;
      doc["replications"] = reps;
      doc["experiments"] = nlohmann::json::array();
      std::vector<int> n_list;
      for (const auto& v : split_list(ns)) n_list.push_back(std::stoi(v));
      for (const auto& row : split_list(rows)) {
        doc["experiments"].push_back({{"distribution", expand_row_alias(row)},
                                      {"n", n_list},
                                      {"gamma", {1.0, 1.05, 1.1, 1.2, 1.5}},
                                      {"estimators", {"ecdf", "ehcdf", "ekcdf"}},
                                      {"metrics", {"L1", "L2", "Linf"}}});
      }
      return run_config(parse_config(doc.dump()), workers);
    }
  } catch (const std::exception& ex) {
    std::cerr << "error: " << ex.what() << '\n';
    return 2;
  }
  return 0;
}

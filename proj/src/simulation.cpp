#include "ehcdf/simulation.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <filesystem>
#include <fstream>
#include <limits>
#include <map>
#include <mutex>
#include <set>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "json.hpp"

#include "ehcdf/cdf_model.hpp"
#include "ehcdf/csv.hpp"
#include "ehcdf/distributions.hpp"
#include "ehcdf/hoeffding.hpp"
#include "ehcdf/kernel_cdf.hpp"
#include "ehcdf/metrics.hpp"
#include "ehcdf/rng.hpp"
#include "ehcdf/svg_plot.hpp"

namespace ehcdf {

using nlohmann::json;

std::string to_string(Estimator e) {
  switch (e) {
    case Estimator::ecdf: return "ecdf";
    case Estimator::ehcdf: return "ehcdf";
    case Estimator::ekcdf: return "ekcdf";
  }
  return "?";
}

std::string to_string(Metric m) {
  switch (m) {
    case Metric::L1: return "L1";
    case Metric::L2: return "L2";
    case Metric::Linf: return "Linf";
    case Metric::W1: return "W1";
    case Metric::W2: return "W2";
  }
  return "?";
}

namespace {

[[noreturn]] void bad(const std::string& msg) { throw std::invalid_argument("config: " + msg); }

void check_keys(const json& obj, const std::set<std::string>& allowed, const std::string& where) {
  if (!obj.is_object()) bad(where + " must be an object");
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    if (!allowed.count(it.key())) bad("unknown key \"" + it.key() + "\" in " + where);
  }
}

std::uint64_t read_seed(const json& v, const std::string& where) {
  if (v.is_number_unsigned()) return v.get<std::uint64_t>();
  if (v.is_number_integer() && v.get<std::int64_t>() >= 0) return v.get<std::uint64_t>();
  bad(where + " must be a nonnegative integer");
}

int read_positive_int(const json& v, const std::string& where) {
  if (!v.is_number_integer() || v.get<std::int64_t>() < 1 || v.get<std::int64_t>() > 100000000) {
    bad(where + " must be a positive integer");
  }
  return v.get<int>();
}

std::vector<double> read_reals(const json& v, const std::string& where) {
  if (!v.is_array()) bad(where + " must be an array");
  std::vector<double> out;
  for (const auto& x : v) {
    if (!x.is_number()) bad(where + " must hold numbers");
    out.push_back(x.get<double>());
  }
  return out;
}

Estimator parse_estimator(const std::string& s) {
  if (s == "ecdf") return Estimator::ecdf;
  if (s == "ehcdf") return Estimator::ehcdf;
  if (s == "ekcdf") return Estimator::ekcdf;
  bad("unknown estimator \"" + s + "\"");
}

Metric parse_metric(const std::string& s) {
  if (s == "L1") return Metric::L1;
  if (s == "L2") return Metric::L2;
  if (s == "Linf") return Metric::Linf;
  if (s == "W1") return Metric::W1;
  if (s == "W2") return Metric::W2;
  bad("unknown metric \"" + s + "\"");
}

ExperimentSpec parse_experiment(const json& e, std::size_t idx, std::vector<std::string>& warnings) {
  const std::string where = "experiments[" + std::to_string(idx) + "]";
  check_keys(e,
             {"distribution", "n", "gamma", "estimators", "metrics", "mse_probability_grid",
              "replications", "seed"},
             where);
  ExperimentSpec spec;
  if (!e.contains("distribution") || !e["distribution"].is_string()) {
    bad(where + ".distribution must be a string");
  }
  spec.distribution = e["distribution"].get<std::string>();
  try {
    parse_distribution(spec.distribution);
  } catch (const std::exception& ex) {
    bad(where + ".distribution: " + ex.what());
  }
  if (!e.contains("n") || !e["n"].is_array() || e["n"].empty()) {
    bad(where + ".n must be a nonempty array");
  }
  for (const auto& v : e["n"]) spec.n.push_back(read_positive_int(v, where + ".n"));

  if (e.contains("estimators")) {
    if (!e["estimators"].is_array() || e["estimators"].empty()) {
      bad(where + ".estimators must be a nonempty array");
    }
    for (const auto& v : e["estimators"]) {
      if (!v.is_string()) bad(where + ".estimators must hold strings");
      spec.estimators.push_back(parse_estimator(v.get<std::string>()));
    }
  } else {
    spec.estimators = {Estimator::ecdf, Estimator::ehcdf};
  }
  if (e.contains("metrics")) {
    if (!e["metrics"].is_array() || e["metrics"].empty()) {
      bad(where + ".metrics must be a nonempty array");
    }
    for (const auto& v : e["metrics"]) {
      if (!v.is_string()) bad(where + ".metrics must hold strings");
      spec.metrics.push_back(parse_metric(v.get<std::string>()));
    }
  } else {
    spec.metrics = {Metric::L1, Metric::L2, Metric::Linf};
  }
  spec.gamma = e.contains("gamma") ? read_reals(e["gamma"], where + ".gamma")
                                   : std::vector<double>{1.0};
  const bool uses_ehcdf = std::find(spec.estimators.begin(), spec.estimators.end(),
                                    Estimator::ehcdf) != spec.estimators.end();
  if (uses_ehcdf && spec.gamma.empty()) bad(where + ".gamma must be nonempty for ehcdf");
  for (double g : spec.gamma) {
    if (!std::isfinite(g) || g <= 0.0) bad(where + ".gamma entries must be positive");
    if (g < 1.0 || g > 1.5) {
      warnings.push_back(where + ": gamma " + format_real(g) + " lies outside [1, 1.5]");
    }
  }
  if (e.contains("mse_probability_grid")) {
    spec.mse_probability_grid = read_reals(e["mse_probability_grid"], where + ".mse_probability_grid");
    for (double p : spec.mse_probability_grid) {
      if (!(p > 0.0 && p < 1.0)) bad(where + ".mse_probability_grid must lie strictly inside (0,1)");
    }
  }
  if (e.contains("replications")) {
    spec.replications = read_positive_int(e["replications"], where + ".replications");
  }
  if (e.contains("seed")) spec.seed = read_seed(e["seed"], where + ".seed");
  return spec;
}

// One estimator column of an experiment: the ECDF, the EHCDF at one gamma,
// or the kernel CDF.
struct Column {
  Estimator est;
  std::optional<double> gamma;
};

std::vector<Column> columns_of(const ExperimentSpec& spec) {
  // The ECDF is always column 0 since every ratio is relative to it.
  std::vector<Column> cols{{Estimator::ecdf, std::nullopt}};
  for (Estimator e : spec.estimators) {
    if (e == Estimator::ehcdf) {
      for (double g : spec.gamma) cols.push_back({e, g});
    } else if (e == Estimator::ekcdf) {
      cols.push_back({e, std::nullopt});
    }
  }
  return cols;
}

double metric_power(Metric m) {
  switch (m) {
    case Metric::L1:
    case Metric::W1: return 1.0;
    case Metric::L2:
    case Metric::W2: return 2.0;
    case Metric::Linf: return kSupNorm;
  }
  return 1.0;
}

bool is_wasserstein(Metric m) { return m == Metric::W1 || m == Metric::W2; }

struct Cell {
  std::optional<double> value;
  std::string status = "ok";
};

struct TaskResult {
  std::vector<Cell> cells;                    // column-major: col * metrics + metric
  std::vector<std::optional<double>> fhat;    // col * grid + k, value of F_hat(Q(p_k))
};

struct Task {
  std::size_t experiment;
  std::size_t n_index;
  int replication;
};

TaskResult run_task(const ExperimentSpec& spec, const Distribution& f,
                    const std::vector<Column>& cols, const std::vector<double>& targets_x,
                    std::uint64_t seed, std::size_t experiment, int n, int replication) {
  Rng rng(derive_stream(seed, {experiment, static_cast<std::uint64_t>(n),
                               static_cast<std::uint64_t>(replication)}));
  std::vector<double> xs(static_cast<std::size_t>(n));
  for (auto& v : xs) v = f.sample(rng);
  const Sample sample(std::move(xs));

  const std::size_t nm = spec.metrics.size();
  const std::size_t ng = targets_x.size();
  TaskResult out;
  out.cells.resize(cols.size() * nm);
  out.fhat.resize(cols.size() * ng);

  for (std::size_t c = 0; c < cols.size(); ++c) {
    const Column& col = cols[c];
    auto fail_all = [&](const std::string& why) {
      for (std::size_t k = 0; k < nm; ++k) out.cells[c * nm + k] = {std::nullopt, why};
    };
    if (col.est == Estimator::ekcdf) {
      std::optional<KernelCdf> kcdf;
      try {
        kcdf.emplace(sample, sj_bandwidth(sample));
      } catch (const std::exception& ex) {
        fail_all(std::string("bandwidth: ") + ex.what());
        continue;
      }
      for (std::size_t k = 0; k < nm; ++k) {
        const Metric m = spec.metrics[k];
        if (is_wasserstein(m)) {
          out.cells[c * nm + k] = {std::nullopt, "unsupported"};
          continue;
        }
        try {
          out.cells[c * nm + k].value = ekcdf_lp_error(*kcdf, f, metric_power(m));
        } catch (const std::exception& ex) {
          out.cells[c * nm + k] = {std::nullopt, ex.what()};
        }
      }
      for (std::size_t g = 0; g < ng; ++g) out.fhat[c * ng + g] = (*kcdf)(targets_x[g]);
      continue;
    }

    const StepCdf step = col.est == Estimator::ecdf
                             ? ecdf(sample)
                             : ehcdf(sample, m_from_gamma(sample.size(), *col.gamma));
    for (std::size_t k = 0; k < nm; ++k) {
      const Metric m = spec.metrics[k];
      try {
        out.cells[c * nm + k].value = is_wasserstein(m)
                                          ? wasserstein_step_cont(step, f, metric_power(m))
                                          : lp_distance_step_cont(step, f, metric_power(m));
      } catch (const std::exception& ex) {
        out.cells[c * nm + k] = {std::nullopt, ex.what()};
      }
    }
    for (std::size_t g = 0; g < ng; ++g) out.fhat[c * ng + g] = step.eval(targets_x[g]);
  }
  return out;
}

std::string status_text(const std::string& s) {
  // Keep messages on one line.
  std::string out = s;
  std::replace(out.begin(), out.end(), '\n', ' ');
  std::replace(out.begin(), out.end(), '\r', ' ');
  return out;
}

std::string gamma_field(const std::optional<double>& g) { return g ? format_real(*g) : ""; }

std::string column_label(const std::string& est, const std::optional<double>& g) {
  return g ? est + " (gamma=" + format_real(*g) + ")" : est;
}

}  // namespace

SimulationConfig parse_config(const std::string& json_text) {
  json root;
  try {
    root = json::parse(json_text);
  } catch (const json::parse_error& ex) {
    bad(std::string("malformed JSON: ") + ex.what());
  }
  check_keys(root, {"output_dir", "seed", "replications", "experiments"}, "root");
  SimulationConfig cfg;
  if (root.contains("output_dir")) {
    if (!root["output_dir"].is_string()) bad("output_dir must be a string");
    cfg.output_dir = root["output_dir"].get<std::string>();
  }
  if (root.contains("seed")) cfg.seed = read_seed(root["seed"], "seed");
  if (root.contains("replications")) {
    cfg.replications = read_positive_int(root["replications"], "replications");
  }
  if (!root.contains("experiments") || !root["experiments"].is_array() ||
      root["experiments"].empty()) {
    bad("experiments must be a nonempty array");
  }
  for (std::size_t i = 0; i < root["experiments"].size(); ++i) {
    cfg.experiments.push_back(parse_experiment(root["experiments"][i], i, cfg.warnings));
  }
  return cfg;
}

SimulationConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

int default_workers() {
  if (const char* env = std::getenv("EHCDF_WORKERS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<int>(std::min(v, 1024L));
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

SimulationResult run_simulation(const SimulationConfig& cfg, int workers) {
  const std::size_t ne = cfg.experiments.size();
  std::vector<DistributionPtr> laws(ne);
  std::vector<std::vector<Column>> cols(ne);
  std::vector<std::vector<double>> targets_x(ne);
  std::vector<std::vector<double>> targets_p(ne);  // F(Q(p))
  std::vector<Task> tasks;
  for (std::size_t e = 0; e < ne; ++e) {
    const auto& spec = cfg.experiments[e];
    laws[e] = parse_distribution(spec.distribution);
    cols[e] = columns_of(spec);
    for (double p : spec.mse_probability_grid) {
      const double x = laws[e]->quantile(p);
      targets_x[e].push_back(x);
      targets_p[e].push_back(laws[e]->cdf(x));
    }
    const int reps = spec.replications.value_or(cfg.replications);
    for (std::size_t i = 0; i < spec.n.size(); ++i) {
      for (int r = 0; r < reps; ++r) tasks.push_back({e, i, r});
    }
  }

  std::vector<TaskResult> results(tasks.size());
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    for (;;) {
      const std::size_t t = next.fetch_add(1);
      if (t >= tasks.size()) return;
      const Task& task = tasks[t];
      const auto& spec = cfg.experiments[task.experiment];
      try {
        results[t] = run_task(spec, *laws[task.experiment], cols[task.experiment],
                              targets_x[task.experiment], spec.seed.value_or(cfg.seed),
                              task.experiment, spec.n[task.n_index], task.replication);
      } catch (...) {
        std::lock_guard<std::mutex> lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next.store(tasks.size());
        return;
      }
    }
  };
  const int nw = std::max(1, std::min<int>(workers, static_cast<int>(tasks.size())));
  if (nw == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < nw; ++w) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  if (failure) std::rethrow_exception(failure);

  // Serial reduction in task order keeps the output independent of scheduling.
  SimulationResult out;
  std::size_t t0 = 0;
  for (std::size_t e = 0; e < ne; ++e) {
    const auto& spec = cfg.experiments[e];
    const int reps = spec.replications.value_or(cfg.replications);
    const std::size_t nm = spec.metrics.size();
    const std::size_t ng = targets_x[e].size();
    for (std::size_t i = 0; i < spec.n.size(); ++i, t0 += static_cast<std::size_t>(reps)) {
      const int n = spec.n[i];
      for (std::size_t c = 0; c < cols[e].size(); ++c) {
        const std::string est = to_string(cols[e][c].est);
        const bool requested = c > 0 || std::find(spec.estimators.begin(), spec.estimators.end(),
                                                  Estimator::ecdf) != spec.estimators.end();
        for (std::size_t k = 0; k < nm; ++k) {
          if (requested) {
            for (int r = 0; r < reps; ++r) {
              const Cell& cell = results[t0 + r].cells[c * nm + k];
              out.records.push_back({spec.distribution, est, cols[e][c].gamma, n, r,
                                     to_string(spec.metrics[k]), cell.value,
                                     status_text(cell.status)});
            }
          }
          if (!requested) continue;
          // Paired ratio over replications where both values exist.
          std::vector<double> ys;
          std::vector<double> xs;
          for (int r = 0; r < reps; ++r) {
            const auto& y = results[t0 + r].cells[c * nm + k].value;
            const auto& x = results[t0 + r].cells[k].value;
            if (y && x) {
              ys.push_back(*y);
              xs.push_back(*x);
            }
          }
          SummaryRow row;
          row.distribution = spec.distribution;
          row.estimator = est;
          row.gamma = cols[e][c].gamma;
          row.n = n;
          row.metric = to_string(spec.metrics[k]);
          row.used = static_cast<int>(ys.size());
          const double nan = std::numeric_limits<double>::quiet_NaN();
          if (ys.empty()) {
            row.mean = row.mean_ecdf = row.ratio = row.se = nan;
            row.flagged = true;
          } else {
            double sy = 0.0;
            double sx = 0.0;
            for (std::size_t q = 0; q < ys.size(); ++q) {
              sy += ys[q];
              sx += xs[q];
            }
            const double nn = static_cast<double>(ys.size());
            row.mean = sy / nn;
            row.mean_ecdf = sx / nn;
            const double ratio = row.mean / row.mean_ecdf;
            row.ratio = 100.0 * ratio;
            if (ys.size() > 1) {
              double ss = 0.0;
              for (std::size_t q = 0; q < ys.size(); ++q) {
                const double d = ys[q] - ratio * xs[q];
                ss += d * d;
              }
              row.se = 100.0 * std::sqrt(ss / (nn - 1.0) / nn) / row.mean_ecdf;
            } else {
              row.se = nan;
            }
            row.flagged = !(row.se <= 1.5);
          }
          out.summary.push_back(row);
        }
        if (!requested) continue;
        for (std::size_t g = 0; g < ng; ++g) {
          double se = 0.0;
          double se0 = 0.0;
          int used = 0;
          for (int r = 0; r < reps; ++r) {
            const auto& y = results[t0 + r].fhat[c * ng + g];
            const auto& x = results[t0 + r].fhat[g];
            if (!y || !x) continue;
            se += (*y - targets_p[e][g]) * (*y - targets_p[e][g]);
            se0 += (*x - targets_p[e][g]) * (*x - targets_p[e][g]);
            ++used;
          }
          MseRow row;
          row.distribution = spec.distribution;
          row.estimator = est;
          row.gamma = cols[e][c].gamma;
          row.n = n;
          row.p = spec.mse_probability_grid[g];
          row.mse = used ? se / used : std::numeric_limits<double>::quiet_NaN();
          row.mse_ecdf = used ? se0 / used : std::numeric_limits<double>::quiet_NaN();
          row.ratio = row.mse / row.mse_ecdf;
          out.mse.push_back(row);
        }
      }
    }
  }
  return out;
}

std::string sanitize_filename(const std::string& s) {
  std::string out;
  for (char c : s) {
    const bool keep = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') ||
                      c == '.' || c == '-';
    if (keep) {
      out += c;
    } else if (!out.empty() && out.back() != '_') {
      out += '_';
    }
  }
  while (!out.empty() && out.back() == '_') out.pop_back();
  return out.empty() ? "dist" : out;
}

void write_records_csv(const std::string& path, const std::vector<MetricRecord>& records) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write " + path);
  CsvWriter w(f);
  w.row({"distribution", "estimator", "gamma", "n", "replication", "metric", "value", "status"});
  for (const auto& r : records) {
    w.row({r.distribution, r.estimator, gamma_field(r.gamma), std::to_string(r.n),
           std::to_string(r.replication), r.metric,
           r.value ? format_real(*r.value) : "NA", r.status});
  }
}

void write_summary_csv(const std::string& path, const std::vector<SummaryRow>& rows) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write " + path);
  CsvWriter w(f);
  w.row({"distribution", "estimator", "gamma", "n", "metric", "used", "mean_error",
         "mean_error_ecdf", "ratio_percent", "se_percent", "flagged"});
  for (const auto& r : rows) {
    w.row({r.distribution, r.estimator, gamma_field(r.gamma), std::to_string(r.n), r.metric,
           std::to_string(r.used), format_real(r.mean), format_real(r.mean_ecdf),
           format_real(r.ratio), format_real(r.se), r.flagged ? "1" : "0"});
  }
}

void write_outputs(const SimulationConfig& cfg, const SimulationResult& result) {
  namespace fs = std::filesystem;
  const fs::path dir(cfg.output_dir);
  fs::create_directories(dir);
  write_records_csv((dir / "records.csv").string(), result.records);
  write_summary_csv((dir / "summary.csv").string(), result.summary);

  // Group MSE rows by distribution in first-appearance order.
  std::vector<std::string> order;
  std::map<std::string, std::vector<const MseRow*>> groups;
  for (const auto& r : result.mse) {
    if (!groups.count(r.distribution)) order.push_back(r.distribution);
    groups[r.distribution].push_back(&r);
  }
  std::set<std::string> used_names;
  for (const auto& dist : order) {
    std::string name = sanitize_filename(dist);
    for (int k = 2; used_names.count(name); ++k) name = sanitize_filename(dist) + "_" + std::to_string(k);
    used_names.insert(name);
    const auto& rows = groups[dist];
    {
      std::ofstream f(dir / ("mse_" + name + ".csv"), std::ios::binary);
      if (!f) throw std::runtime_error("cannot write MSE table for " + dist);
      CsvWriter w(f);
      w.row({"distribution", "estimator", "gamma", "n", "p", "mse", "mse_ecdf", "ratio"});
      for (const MseRow* r : rows) {
        w.row({r->distribution, r->estimator, gamma_field(r->gamma), std::to_string(r->n),
               format_real(r->p), format_real(r->mse), format_real(r->mse_ecdf),
               format_real(r->ratio)});
      }
    }
    std::set<int> ns;
    for (const MseRow* r : rows) ns.insert(r->n);
    std::vector<PlotSeries> series;
    std::map<std::string, std::size_t> index;
    for (const MseRow* r : rows) {
      std::string label = column_label(r->estimator, r->gamma);
      if (ns.size() > 1) label += " n=" + std::to_string(r->n);
      auto [it, fresh] = index.emplace(label, series.size());
      if (fresh) series.push_back({label, {}, {}});
      series[it->second].x.push_back(r->p);
      series[it->second].y.push_back(r->ratio);
    }
    std::ofstream f(dir / ("mse_" + name + ".svg"), std::ios::binary);
    if (!f) throw std::runtime_error("cannot write MSE plot for " + dist);
    f << render_line_plot("MSE ratio: " + dist, "p", "MSE / MSE(ECDF)", series, 1.0);
  }
}

}  // namespace ehcdf

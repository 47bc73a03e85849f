// Copyright 2026 The fqp Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "fqp/harness.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "fqp/objectives.hpp"
#include "fqp/parallel.hpp"

namespace fqp {

namespace {

template <typename T>
bool strictly_increasing(const std::vector<T>& v) {
  return std::adjacent_find(v.begin(), v.end(), [](const T& a, const T& b) {
           return !(a < b);
         }) == v.end();
}

template <typename T>
std::vector<T> sorted_unique(std::vector<T> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

std::vector<RunKey> run_keys(const ExperimentConfig& cfg) {
  std::vector<RunKey> keys;
  for (AnsatzKind a : sorted_unique(cfg.ansatze)) {
    for (int q : sorted_unique(cfg.qubits)) {
      for (int f : sorted_unique(cfg.modes)) {
        for (std::uint64_t s : sorted_unique(cfg.seeds)) {
          keys.push_back({a, q, f, s});
        }
      }
    }
  }
  return keys;
}

TrainConfig train_config_for(const ExperimentConfig& cfg, const RunKey& key,
                             bool qng) {
  TrainConfig tc;
  tc.ansatz = key.ansatz;
  tc.n_modes = key.n_modes;
  tc.iterations = cfg.iterations;
  tc.use_qng = qng;
  tc.seed = key.seed;
  tc.evolution = cfg.evolution_for(key.n_modes);
  tc.stop_below = cfg.stop_below;
  tc.record_timing = cfg.timing;
  tc.workers = 1;
  return tc;
}

std::vector<RunRecord> run_all(const ExperimentConfig& cfg,
                               const std::vector<RunKey>& keys,
                               const auto& make_run) {
  std::vector<std::optional<TrainingResult>> results(keys.size());
  parallel_for(
      keys.size(), [&](std::size_t i) { results[i] = make_run(keys[i]); },
      cfg.workers);
  std::vector<RunRecord> runs;
  runs.reserve(keys.size());
  for (std::size_t i = 0; i < keys.size(); ++i) {
    if (results[i]->aborted) {
      throw NumericalAbort(keys[i].tag() + ": " + results[i]->diagnostic);
    }
    runs.push_back({keys[i], std::move(*results[i])});
  }
  return runs;
}

std::filesystem::path output_file(const ExperimentConfig& cfg,
                                  const std::string& stem) {
  return cfg.out / (stem + std::string(file_extension(cfg.format)));
}

void write_table(const ExperimentConfig& cfg, const std::string& stem,
                 const Table& table) {
  if (!cfg.out.empty()) {
    emit_table(table, output_file(cfg, stem), cfg.format);
  }
}

std::int64_t as_int(const Cell& c) {
  if (const auto* i = std::get_if<std::int64_t>(&c)) {
    return *i;
  }
  if (const auto* d = std::get_if<double>(&c)) {
    return static_cast<std::int64_t>(*d);
  }
  return std::stoll(std::get<std::string>(c));
}

double as_double(const Cell& c) {
  if (const auto* d = std::get_if<double>(&c)) {
    return *d;
  }
  if (const auto* i = std::get_if<std::int64_t>(&c)) {
    return static_cast<double>(*i);
  }
  return std::stod(std::get<std::string>(c));
}

std::size_t column_index(const Table& t, const std::string& name) {
  const auto it = std::find(t.columns.begin(), t.columns.end(), name);
  if (it == t.columns.end()) {
    throw std::invalid_argument("results table lacks column " + name);
  }
  return static_cast<std::size_t>(it - t.columns.begin());
}

}  // namespace

std::string_view to_string(ExperimentKind kind) {
  switch (kind) {
    case ExperimentKind::QftSweep:
      return "qft_sweep";
    case ExperimentKind::EnergyRun:
      return "energy_run";
    case ExperimentKind::VarianceScan:
      return "variance_scan";
  }
  return "unknown";
}

ExperimentKind parse_experiment_kind(std::string_view name) {
  if (name == "qft_sweep" || name == "train-qft") {
    return ExperimentKind::QftSweep;
  }
  if (name == "energy_run" || name == "train-energy") {
    return ExperimentKind::EnergyRun;
  }
  if (name == "variance_scan" || name == "variance-scan") {
    return ExperimentKind::VarianceScan;
  }
  throw ConfigError("unknown experiment '" + std::string(name) + "'");
}

std::vector<double> default_theta_max_grid() {
  constexpr int kPoints = 16;
  const double lo = std::log(0.1);
  const double hi = std::log(16.0 * std::numbers::pi);
  std::vector<double> grid(kPoints);
  for (int i = 0; i < kPoints; ++i) {
    grid[static_cast<std::size_t>(i)] =
        std::exp(lo + (hi - lo) * i / (kPoints - 1));
  }
  return grid;
}

void ExperimentConfig::validate() const {
  if (seeds.empty()) {
    throw ConfigError("seed list must not be empty");
  }
  if (ansatze.empty() || qubits.empty() || modes.empty()) {
    throw ConfigError("ansatz, qubit and mode lists must not be empty");
  }
  if (iterations < 0) {
    throw ConfigError("iterations must be >= 0");
  }
  if (trotter_steps < 0) {
    throw ConfigError("trotter steps must be >= 0 (0 = default)");
  }
  if (input_states < 1) {
    throw ConfigError("input_states must be >= 1");
  }
  const int min_q = kind == ExperimentKind::QftSweep ? 1 : 2;
  int max_q = kMaxQubits;
  int max_f = 1 << 20;
  if (kind == ExperimentKind::VarianceScan && !large) {
    max_q = 6;
    max_f = 32;
  } else if (kind == ExperimentKind::VarianceScan) {
    max_f = 128;
  }
  for (int q : qubits) {
    if (q < min_q || q > max_q) {
      throw ConfigError("qubit count " + std::to_string(q) + " outside [" +
                        std::to_string(min_q) + ", " + std::to_string(max_q) +
                        "]" + (large ? "" : " (see --large)"));
    }
  }
  for (int f : modes) {
    if (f < 1 || f > max_f) {
      throw ConfigError("mode count " + std::to_string(f) + " outside [1, " +
                        std::to_string(max_f) + "]");
    }
  }
  if (kind == ExperimentKind::VarianceScan) {
    if (samples < 100) {
      throw ConfigError("variance scans need at least 100 samples");
    }
    if (theta_max_grid.empty() || theta_max_grid.front() <= 0.0 ||
        !strictly_increasing(theta_max_grid)) {
      throw ConfigError("theta_max grid must be strictly positive and sorted");
    }
  }
}

EvolutionConfig ExperimentConfig::evolution_for(int n_modes) const {
  EvolutionConfig evo = EvolutionConfig::for_modes(n_modes);
  if (trotter_steps > 0) {
    evo.n_steps = trotter_steps;
  }
  return evo;
}

void apply_config_json(const nlohmann::json& j, ExperimentConfig& cfg) {
  try {
    if (!j.is_object()) {
      throw ConfigError("config must be a JSON object");
    }
    if (j.contains("experiment")) {
      cfg.kind = parse_experiment_kind(j["experiment"].get<std::string>());
    }
    if (j.contains("ansatz")) {
      cfg.ansatze.clear();
      const auto& a = j["ansatz"];
      if (a.is_string()) {
        cfg.ansatze.push_back(parse_ansatz_kind(a.get<std::string>()));
      } else {
        for (const auto& name : a) {
          cfg.ansatze.push_back(parse_ansatz_kind(name.get<std::string>()));
        }
      }
    }
    if (j.contains("qubits")) j["qubits"].get_to(cfg.qubits);
    if (j.contains("modes")) j["modes"].get_to(cfg.modes);
    if (j.contains("iterations")) j["iterations"].get_to(cfg.iterations);
    if (j.contains("seeds")) j["seeds"].get_to(cfg.seeds);
    if (j.contains("theta_max_grid")) {
      j["theta_max_grid"].get_to(cfg.theta_max_grid);
    }
    if (j.contains("samples")) j["samples"].get_to(cfg.samples);
    if (j.contains("qng")) j["qng"].get_to(cfg.qng);
    if (j.contains("trotter_steps")) j["trotter_steps"].get_to(cfg.trotter_steps);
    if (j.contains("input_states")) j["input_states"].get_to(cfg.input_states);
    if (j.contains("hamiltonian")) {
      const auto h = j["hamiltonian"].get<std::string>();
      if (h == "fixed") {
        cfg.problem = ProblemFamily::Fixed;
      } else if (h == "random") {
        cfg.problem = ProblemFamily::Random;
      } else {
        throw ConfigError("hamiltonian must be fixed or random");
      }
    }
    if (j.contains("stop_below")) {
      if (j["stop_below"].is_null()) {
        cfg.stop_below.reset();
      } else {
        cfg.stop_below = j["stop_below"].get<double>();
      }
    }
    if (j.contains("out")) cfg.out = j["out"].get<std::string>();
    if (j.contains("format")) {
      cfg.format = parse_output_format(j["format"].get<std::string>());
    }
    if (j.contains("timing")) j["timing"].get_to(cfg.timing);
    if (j.contains("workers")) j["workers"].get_to(cfg.workers);
    if (j.contains("large")) j["large"].get_to(cfg.large);
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("config: ") + e.what());
  } catch (const ConfigError&) {
    throw;
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
}

nlohmann::json config_to_json(const ExperimentConfig& cfg) {
  nlohmann::json ansatze = nlohmann::json::array();
  for (AnsatzKind a : cfg.ansatze) {
    ansatze.push_back(std::string(to_string(a)));
  }
  nlohmann::json j{
      {"experiment", std::string(to_string(cfg.kind))},
      {"ansatz", ansatze},
      {"qubits", cfg.qubits},
      {"modes", cfg.modes},
      {"iterations", cfg.iterations},
      {"seeds", cfg.seeds},
      {"theta_max_grid", cfg.theta_max_grid},
      {"samples", cfg.samples},
      {"qng", cfg.qng},
      {"trotter_steps", cfg.trotter_steps},
      {"input_states", cfg.input_states},
      {"hamiltonian",
       cfg.problem == ProblemFamily::Fixed ? "fixed" : "random"},
      {"out", cfg.out.string()},
      {"format", std::string(to_string(cfg.format))},
      {"timing", cfg.timing},
      {"workers", cfg.workers},
      {"large", cfg.large},
  };
  j["stop_below"] =
      cfg.stop_below ? nlohmann::json(*cfg.stop_below) : nlohmann::json();
  return j;
}

std::string RunKey::tag() const {
  return std::string(to_string(ansatz)) + "_q" + std::to_string(n_qubits) +
         "_f" + std::to_string(n_modes) + "_s" + std::to_string(seed);
}

QftSweepResult run_qft_sweep(const ExperimentConfig& cfg) {
  cfg.validate();
  const auto keys = run_keys(cfg);
  QftSweepResult out;
  out.runs = run_all(cfg, keys, [&](const RunKey& key) {
    const auto objective =
        ObjectiveSpec::compilation(qft_matrix(key.n_qubits), cfg.input_states);
    return train(objective, train_config_for(cfg, key, cfg.qng));
  });
  for (const auto& run : out.runs) {
    SweepSummaryRow row;
    row.key = run.key;
    if (const auto best = run.result.best_index()) {
      const auto& s = run.result.steps[*best];
      row.epsilon_opt = s.figure_of_merit;
      row.action_opt = s.action;
      row.best_iteration = s.iteration;
    } else {
      // No iterations: report the initialization.
      const ControlSystem sys = build_ising_system(run.key.n_qubits);
      row.epsilon_opt = implementation_error(
          propagate(run.result.initial, sys, cfg.evolution_for(run.key.n_modes)),
          qft_matrix(run.key.n_qubits));
      row.action_opt = effective_action(run.result.initial);
    }
    out.summary.push_back(row);
    write_table(cfg, "qft_" + run.key.tag(), training_table(run.result.steps));
  }
  write_table(cfg, "qft_summary", sweep_summary_table(out.summary));
  return out;
}

ComplexMatrix energy_problem(ProblemFamily family, int n_qubits,
                             std::uint64_t seed) {
  if (family == ProblemFamily::Fixed) {
    return fixed_problem_hamiltonian(n_qubits);
  }
  Rng rng = Rng::stream(seed, 0x4850ULL + static_cast<std::uint64_t>(n_qubits));
  return random_problem_hamiltonian(n_qubits, rng).matrix();
}

EnergyResult run_energy_experiment(const ExperimentConfig& cfg) {
  cfg.validate();
  const auto keys = run_keys(cfg);
  EnergyResult out;
  out.runs = run_all(cfg, keys, [&](const RunKey& key) {
    const auto objective = ObjectiveSpec::energy(
        energy_problem(cfg.problem, key.n_qubits, key.seed));
    return train(objective, train_config_for(cfg, key, false));
  });
  for (const auto& run : out.runs) {
    EnergySummaryRow row;
    row.key = run.key;
    row.ground_energy = run.result.ground_energy.value_or(0.0);
    if (const auto best = run.result.best_index()) {
      row.min_delta_e = run.result.steps[*best].figure_of_merit;
      row.final_delta_e = run.result.steps.back().figure_of_merit;
    }
    out.summary.push_back(row);
    write_table(cfg, "energy_" + run.key.tag(),
                training_table(run.result.steps));
  }
  write_table(cfg, "energy_summary", energy_summary_table(out.summary));
  return out;
}

SampleStatistics sample_statistics(std::span<const double> values) {
  const auto n = static_cast<double>(values.size());
  if (values.size() < 2) {
    throw std::invalid_argument("sample_statistics: need at least 2 values");
  }
  SampleStatistics s;
  for (double v : values) {
    s.mean += v;
  }
  s.mean /= n;
  double m2 = 0.0;
  double m4 = 0.0;
  for (double v : values) {
    const double d = (v - s.mean) * (v - s.mean);
    m2 += d;
    m4 += d * d;
  }
  s.variance = m2 / (n - 1.0);
  m4 /= n;
  const double var_of_var =
      (m4 - (n - 3.0) / (n - 1.0) * s.variance * s.variance) / n;
  s.variance_stderr = std::sqrt(std::max(0.0, var_of_var));
  return s;
}

std::uint64_t scan_stream_seed(std::uint64_t seed, AnsatzKind ansatz,
                               int n_qubits, int n_modes) {
  std::uint64_t h = splitmix64(seed);
  h = splitmix64(h ^ static_cast<std::uint64_t>(ansatz));
  h = splitmix64(h ^ static_cast<std::uint64_t>(n_qubits));
  return splitmix64(h ^ static_cast<std::uint64_t>(n_modes));
}

std::vector<double> sample_gradients(AnsatzKind ansatz, int n_qubits,
                                     int n_modes, double theta_max,
                                     int n_samples, std::uint64_t seed,
                                     const EvolutionConfig& evo, int workers,
                                     double delta) {
  const ControlSystem sys = build_ising_system(n_qubits);
  const ComplexMatrix problem = fixed_problem_hamiltonian(n_qubits);
  const ComplexVector ground = StateVector::basis(n_qubits, 0).amplitudes();
  const std::uint64_t stream = scan_stream_seed(seed, ansatz, n_qubits, n_modes);
  const LossFunction loss = [&](const ParameterSet& p) {
    return expectation(evolve(p, sys, evo, ground), problem);
  };
  std::vector<double> grads(static_cast<std::size_t>(n_samples));
  parallel_for(
      grads.size(),
      [&](std::size_t i) {
        Rng rng = Rng::stream(stream, i);
        const ParameterSet p =
            sample_parameter_set(ansatz, n_qubits, n_modes, theta_max, rng);
        grads[i] = central_diff_component(loss, p, 0, 0, delta);
      },
      workers);
  return grads;
}

ScanRecord scan_point(AnsatzKind ansatz, int n_qubits, int n_modes,
                      double theta_max, int n_samples, std::uint64_t seed,
                      const EvolutionConfig& evo, int workers) {
  const auto grads = sample_gradients(ansatz, n_qubits, n_modes, theta_max,
                                      n_samples, seed, evo, workers);
  const auto stats = sample_statistics(grads);
  return ScanRecord{ansatz,         n_qubits,       theta_max,
                    n_samples,      stats.mean,     stats.variance,
                    stats.variance_stderr};
}

std::vector<ScanRecord> run_variance_scan(const ExperimentConfig& cfg) {
  cfg.validate();
  const int n_f = cfg.modes.front();
  const EvolutionConfig evo = cfg.evolution_for(n_f);
  std::vector<ScanRecord> records;
  for (AnsatzKind a : sorted_unique(cfg.ansatze)) {
    for (int q : sorted_unique(cfg.qubits)) {
      for (double theta_max : cfg.theta_max_grid) {
        records.push_back(scan_point(a, q, n_f, theta_max, cfg.samples,
                                     cfg.seeds.front(), evo, cfg.workers));
      }
    }
  }
  write_table(cfg, "variance_scan", scan_table(records));
  return records;
}

double fit_log_slope(std::span<const double> x,
                     std::span<const double> variance) {
  if (x.size() != variance.size() || x.size() < 2) {
    throw std::invalid_argument("fit_log_slope: need >= 2 matching points");
  }
  const auto n = static_cast<double>(x.size());
  double sx = 0.0;
  double sy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!(variance[i] > 0.0)) {
      throw std::domain_error("fit_log_slope: variance must be positive");
    }
    sx += x[i];
    sy += std::log(variance[i]);
  }
  const double mx = sx / n;
  const double my = sy / n;
  double sxy = 0.0;
  double sxx = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (std::log(variance[i]) - my);
    sxx += (x[i] - mx) * (x[i] - mx);
  }
  return sxy / sxx;
}

Table training_table(std::span<const TrainingStep> steps) {
  Table t;
  t.columns = {"iteration", "loss",      "epsilon_or_dE",
               "action",    "grad_norm", "seconds"};
  for (const auto& s : steps) {
    t.rows.push_back({std::int64_t{s.iteration}, s.loss, s.figure_of_merit,
                      s.action, s.grad_norm, s.seconds});
  }
  return t;
}

std::vector<TrainingStep> training_steps_from_table(const Table& table) {
  const auto it = column_index(table, "iteration");
  const auto lo = column_index(table, "loss");
  const auto fm = column_index(table, "epsilon_or_dE");
  const auto ac = column_index(table, "action");
  const auto gn = column_index(table, "grad_norm");
  const auto sc = column_index(table, "seconds");
  std::vector<TrainingStep> steps;
  for (const auto& row : table.rows) {
    steps.push_back({static_cast<int>(as_int(row[it])), as_double(row[lo]),
                     as_double(row[fm]), as_double(row[ac]),
                     as_double(row[gn]), as_double(row[sc])});
  }
  return steps;
}

Table sweep_summary_table(std::span<const SweepSummaryRow> rows) {
  Table t;
  t.columns = {"ansatz",      "n_q",        "n_f",           "seed",
               "epsilon_opt", "action_opt", "best_iteration"};
  for (const auto& r : rows) {
    t.rows.push_back({std::string(to_string(r.key.ansatz)),
                      std::int64_t{r.key.n_qubits}, std::int64_t{r.key.n_modes},
                      static_cast<std::int64_t>(r.key.seed), r.epsilon_opt,
                      r.action_opt, std::int64_t{r.best_iteration}});
  }
  return t;
}

Table energy_summary_table(std::span<const EnergySummaryRow> rows) {
  Table t;
  t.columns = {"ansatz",        "n_q",         "n_f",          "seed",
               "ground_energy", "min_delta_e", "final_delta_e"};
  for (const auto& r : rows) {
    t.rows.push_back({std::string(to_string(r.key.ansatz)),
                      std::int64_t{r.key.n_qubits}, std::int64_t{r.key.n_modes},
                      static_cast<std::int64_t>(r.key.seed), r.ground_energy,
                      r.min_delta_e, r.final_delta_e});
  }
  return t;
}

Table scan_table(std::span<const ScanRecord> records) {
  Table t;
  t.columns = {"ansatz",    "n_q",      "theta_max", "n_samples",
               "grad_mean", "grad_var", "var_stderr"};
  for (const auto& r : records) {
    t.rows.push_back({std::string(to_string(r.ansatz)),
                      std::int64_t{r.n_qubits}, r.theta_max,
                      std::int64_t{r.n_samples}, r.grad_mean, r.grad_var,
                      r.var_stderr});
  }
  return t;
}

std::vector<ScanRecord> scan_records_from_table(const Table& table) {
  const auto an = column_index(table, "ansatz");
  const auto nq = column_index(table, "n_q");
  const auto tm = column_index(table, "theta_max");
  const auto ns = column_index(table, "n_samples");
  const auto gm = column_index(table, "grad_mean");
  const auto gv = column_index(table, "grad_var");
  const auto se = column_index(table, "var_stderr");
  std::vector<ScanRecord> out;
  for (const auto& row : table.rows) {
    out.push_back({parse_ansatz_kind(std::get<std::string>(row[an])),
                   static_cast<int>(as_int(row[nq])), as_double(row[tm]),
                   static_cast<int>(as_int(row[ns])), as_double(row[gm]),
                   as_double(row[gv]), as_double(row[se])});
  }
  return out;
}

void emit_results(std::span<const ScanRecord> records,
                  const std::filesystem::path& path, OutputFormat format) {
  emit_table(scan_table(records), path, format);
}

void emit_results(std::span<const TrainingStep> steps,
                  const std::filesystem::path& path, OutputFormat format) {
  emit_table(training_table(steps), path, format);
}

}  // namespace fqp

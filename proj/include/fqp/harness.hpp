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

#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "fqp/ansatz.hpp"
#include "fqp/optimizer.hpp"
#include "fqp/results_io.hpp"
#include "json.hpp"

namespace fqp {

/// Invalid experiment configuration (CLI exit code 1).
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A training run hit a non-finite loss (CLI exit code 2).
class NumericalAbort : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class ExperimentKind { QftSweep, EnergyRun, VarianceScan };
enum class ProblemFamily { Fixed, Random };

std::string_view to_string(ExperimentKind kind);
ExperimentKind parse_experiment_kind(std::string_view name);

/// 16 log-spaced points in [0.1, 16 pi].
std::vector<double> default_theta_max_grid();

struct ExperimentConfig {
  ExperimentKind kind = ExperimentKind::QftSweep;
  std::vector<AnsatzKind> ansatze{AnsatzKind::Fourier};
  std::vector<int> qubits{2};
  std::vector<int> modes{8};
  int iterations = 300;
  std::vector<std::uint64_t> seeds{1, 2, 3, 4, 5};
  std::vector<double> theta_max_grid = default_theta_max_grid();
  int samples = 500;
  bool qng = true;
  /// 0 selects EvolutionConfig::for_modes.
  int trotter_steps = 0;
  int input_states = 8;
  ProblemFamily problem = ProblemFamily::Fixed;
  std::optional<double> stop_below;
  /// Output directory; empty writes nothing.
  std::filesystem::path out;
  OutputFormat format = OutputFormat::Csv;
  bool timing = false;
  /// 0 uses every hardware thread.
  int workers = 0;
  /// Lifts the desk-scale scan envelope (n_q <= 6, n_f <= 32) to n_q <= 8,
  /// n_f <= 128.
  bool large = false;

  /// Throws ConfigError.
  void validate() const;
  EvolutionConfig evolution_for(int n_modes) const;
};

/// JSON mirror of ExperimentConfig. Keys: experiment, ansatz, qubits, modes,
/// iterations, seeds, theta_max_grid, samples, qng, trotter_steps,
/// input_states, hamiltonian, stop_below, out, format, timing, workers,
/// large. Missing keys keep their defaults.
void apply_config_json(const nlohmann::json& j, ExperimentConfig& cfg);
nlohmann::json config_to_json(const ExperimentConfig& cfg);

struct RunKey {
  AnsatzKind ansatz = AnsatzKind::Fourier;
  int n_qubits = 0;
  int n_modes = 0;
  std::uint64_t seed = 0;

  auto operator<=>(const RunKey&) const = default;
  /// e.g. "fourier_q2_f8_s1"
  std::string tag() const;
};

struct RunRecord {
  RunKey key;
  TrainingResult result;
};

struct SweepSummaryRow {
  RunKey key;
  double epsilon_opt = 0.0;
  double action_opt = 0.0;
  int best_iteration = 0;
};

struct QftSweepResult {
  std::vector<RunRecord> runs;
  std::vector<SweepSummaryRow> summary;
};

/// Trains every (ansatz, n_q, n_f, seed) against qft_matrix(n_q); records
/// the minimum exact epsilon over training and the action of that iterate.
/// Writes one CSV per run plus qft_summary when cfg.out is set.
QftSweepResult run_qft_sweep(const ExperimentConfig& cfg);

struct EnergySummaryRow {
  RunKey key;
  double ground_energy = 0.0;
  double min_delta_e = 0.0;
  double final_delta_e = 0.0;
};

struct EnergyResult {
  std::vector<RunRecord> runs;
  std::vector<EnergySummaryRow> summary;
};

/// Problem Hamiltonian of an energy run: Z1 Z2 (Fixed) or a random
/// transverse-field Ising instance seeded by (seed, n_q) only, so both
/// ansaetze see the same instance for a given seed.
ComplexMatrix energy_problem(ProblemFamily family, int n_qubits,
                             std::uint64_t seed);

/// Ground-state preparation with the identity metric; Delta E per iteration.
EnergyResult run_energy_experiment(const ExperimentConfig& cfg);

struct ScanRecord {
  AnsatzKind ansatz = AnsatzKind::Fourier;
  int n_qubits = 0;
  double theta_max = 0.0;
  int n_samples = 0;
  double grad_mean = 0.0;
  double grad_var = 0.0;
  double var_stderr = 0.0;

  bool operator==(const ScanRecord&) const = default;
};

struct SampleStatistics {
  double mean = 0.0;
  /// Unbiased sample variance.
  double variance = 0.0;
  /// Standard error of the variance, sqrt((m4 - (n-3)/(n-1) s^4) / n).
  double variance_stderr = 0.0;
};

SampleStatistics sample_statistics(std::span<const double> values);

/// d L / d theta_{1,1} samples for L = <0|U^dag Z1 Z2 U|0> with parameters
/// drawn by sample_parameter_set, central differences with step `delta`.
/// Sample i uses Rng::stream(scan_stream_seed(seed, ansatz, n_q, n_f), i),
/// so every theta_max shares directions and radius quantiles.
std::vector<double> sample_gradients(AnsatzKind ansatz, int n_qubits,
                                     int n_modes, double theta_max,
                                     int n_samples, std::uint64_t seed,
                                     const EvolutionConfig& evo,
                                     int workers = 1, double delta = 1e-4);

std::uint64_t scan_stream_seed(std::uint64_t seed, AnsatzKind ansatz,
                               int n_qubits, int n_modes);

ScanRecord scan_point(AnsatzKind ansatz, int n_qubits, int n_modes,
                      double theta_max, int n_samples, std::uint64_t seed,
                      const EvolutionConfig& evo, int workers = 1);

/// One record per (ansatz, n_q, theta_max) with n_f = cfg.modes.front() and
/// the first seed. Writes variance_scan when cfg.out is set.
std::vector<ScanRecord> run_variance_scan(const ExperimentConfig& cfg);

/// Least-squares slope of ln(variance) against x.
double fit_log_slope(std::span<const double> x,
                     std::span<const double> variance);

// Record <-> table conversions and writers.
Table training_table(std::span<const TrainingStep> steps);
Table sweep_summary_table(std::span<const SweepSummaryRow> rows);
Table energy_summary_table(std::span<const EnergySummaryRow> rows);
Table scan_table(std::span<const ScanRecord> records);
std::vector<ScanRecord> scan_records_from_table(const Table& table);
std::vector<TrainingStep> training_steps_from_table(const Table& table);

void emit_results(std::span<const ScanRecord> records,
                  const std::filesystem::path& path, OutputFormat format);
void emit_results(std::span<const TrainingStep> steps,
                  const std::filesystem::path& path, OutputFormat format);

}  // namespace fqp

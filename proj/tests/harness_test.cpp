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

#include <gtest/gtest.h>

#include <cmath>
#include <fstream>
#include <numbers>
#include <random>
#include <sstream>

namespace fqp {
namespace {

constexpr double kPi = std::numbers::pi;

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::filesystem::path fresh_dir(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / name;
  std::filesystem::remove_all(dir);
  return dir;
}

ExperimentConfig tiny_qft() {
  ExperimentConfig cfg;
  cfg.kind = ExperimentKind::QftSweep;
  cfg.qubits = {1};
  cfg.modes = {2};
  cfg.iterations = 3;
  cfg.seeds = {2, 1};
  cfg.input_states = 2;
  cfg.workers = 2;
  return cfg;
}

TEST(Config, DefaultsAreValid) {
  ExperimentConfig cfg;
  EXPECT_NO_THROW(cfg.validate());
  const auto grid = default_theta_max_grid();
  ASSERT_EQ(grid.size(), 16u);
  EXPECT_NEAR(grid.front(), 0.1, 1e-15);
  EXPECT_NEAR(grid.back(), 16 * kPi, 1e-12);
  for (std::size_t i = 2; i < grid.size(); ++i) {
    EXPECT_NEAR(grid[i] / grid[i - 1], grid[1] / grid[0], 1e-12);
  }
}

TEST(Config, RejectsInvalidSettings) {
  const auto expect_invalid = [](auto mutate) {
    ExperimentConfig cfg;
    mutate(cfg);
    EXPECT_THROW(cfg.validate(), ConfigError);
  };
  expect_invalid([](ExperimentConfig& c) { c.seeds.clear(); });
  expect_invalid([](ExperimentConfig& c) { c.iterations = -1; });
  expect_invalid([](ExperimentConfig& c) { c.modes = {0}; });
  expect_invalid([](ExperimentConfig& c) { c.qubits = {9}; });
  expect_invalid([](ExperimentConfig& c) { c.input_states = 0; });
  expect_invalid([](ExperimentConfig& c) {
    c.kind = ExperimentKind::VarianceScan;
    c.samples = 99;
  });
  expect_invalid([](ExperimentConfig& c) {
    c.kind = ExperimentKind::VarianceScan;
    c.theta_max_grid = {1.0, 0.5};
  });
  expect_invalid([](ExperimentConfig& c) {
    c.kind = ExperimentKind::VarianceScan;
    c.theta_max_grid = {0.0, 0.5};
  });
  expect_invalid([](ExperimentConfig& c) {
    c.kind = ExperimentKind::VarianceScan;
    c.qubits = {7};
  });
  expect_invalid([](ExperimentConfig& c) {
    c.kind = ExperimentKind::EnergyRun;
    c.qubits = {1};
  });
}

TEST(Config, LargeFlagWidensScanEnvelope) {
  ExperimentConfig cfg;
  cfg.kind = ExperimentKind::VarianceScan;
  cfg.qubits = {8};
  cfg.modes = {128};
  EXPECT_THROW(cfg.validate(), ConfigError);
  cfg.large = true;
  EXPECT_NO_THROW(cfg.validate());
}

TEST(Config, JsonRoundTrip) {
  ExperimentConfig cfg;
  cfg.kind = ExperimentKind::EnergyRun;
  cfg.ansatze = {AnsatzKind::StepWise, AnsatzKind::Fourier};
  cfg.qubits = {2, 3};
  cfg.seeds = {9};
  cfg.stop_below = 0.25;
  cfg.problem = ProblemFamily::Random;
  cfg.format = OutputFormat::Json;
  ExperimentConfig back;
  apply_config_json(nlohmann::json::parse(config_to_json(cfg).dump()), back);
  EXPECT_EQ(config_to_json(back), config_to_json(cfg));
}

TEST(Config, JsonErrorsBecomeConfigErrors) {
  ExperimentConfig cfg;
  EXPECT_THROW(apply_config_json(nlohmann::json::array(), cfg), ConfigError);
  EXPECT_THROW(apply_config_json({{"iterations", "many"}}, cfg), ConfigError);
  EXPECT_THROW(apply_config_json({{"ansatz", "spline"}}, cfg), ConfigError);
  EXPECT_THROW(apply_config_json({{"format", "xml"}}, cfg), ConfigError);
  EXPECT_THROW(apply_config_json({{"hamiltonian", "heisenberg"}}, cfg),
               ConfigError);
}

TEST(Config, ExperimentNames) {
  for (auto k : {ExperimentKind::QftSweep, ExperimentKind::EnergyRun,
                 ExperimentKind::VarianceScan}) {
    EXPECT_EQ(parse_experiment_kind(to_string(k)), k);
  }
  EXPECT_EQ(parse_experiment_kind("train-energy"), ExperimentKind::EnergyRun);
  EXPECT_THROW(parse_experiment_kind("bogus"), ConfigError);
}

TEST(RunKeyTest, Tag) {
  EXPECT_EQ((RunKey{AnsatzKind::StepWise, 3, 16, 4}).tag(), "stepwise_q3_f16_s4");
}

TEST(QftSweep, SummarySortedBySeedAndPermutationInvariant) {
  ExperimentConfig a = tiny_qft();
  ExperimentConfig b = tiny_qft();
  b.seeds = {1, 2};
  const auto ra = run_qft_sweep(a);
  const auto rb = run_qft_sweep(b);
  ASSERT_EQ(ra.summary.size(), 2u);
  EXPECT_EQ(ra.summary[0].key.seed, 1u);
  EXPECT_EQ(ra.summary[1].key.seed, 2u);
  EXPECT_EQ(to_csv(sweep_summary_table(ra.summary)),
            to_csv(sweep_summary_table(rb.summary)));
}

TEST(QftSweep, SummaryReportsBestIterate) {
  const auto r = run_qft_sweep(tiny_qft());
  for (std::size_t i = 0; i < r.runs.size(); ++i) {
    const auto& steps = r.runs[i].result.steps;
    double best = steps.front().figure_of_merit;
    for (const auto& s : steps) best = std::min(best, s.figure_of_merit);
    EXPECT_EQ(r.summary[i].epsilon_opt, best);
    EXPECT_EQ(steps[static_cast<std::size_t>(r.summary[i].best_iteration)]
                  .figure_of_merit,
              best);
  }
}

TEST(QftSweep, WritesByteIdenticalFiles) {
  const auto d1 = fresh_dir("fqp_harness_a");
  const auto d2 = fresh_dir("fqp_harness_b");
  ExperimentConfig cfg = tiny_qft();
  cfg.out = d1;
  run_qft_sweep(cfg);
  cfg.out = d2;
  cfg.workers = 1;
  run_qft_sweep(cfg);
  for (const char* name :
       {"qft_summary.csv", "qft_fourier_q1_f2_s1.csv", "qft_fourier_q1_f2_s2.csv"}) {
    ASSERT_TRUE(std::filesystem::exists(d1 / name)) << name;
    EXPECT_EQ(slurp(d1 / name), slurp(d2 / name)) << name;
  }
  EXPECT_EQ(slurp(d1 / "qft_fourier_q1_f2_s1.csv").substr(0, 50),
            "iteration,loss,epsilon_or_dE,action,grad_norm,seco");
  std::filesystem::remove_all(d1);
  std::filesystem::remove_all(d2);
}

TEST(Energy, FixedProblemAndVariationalBound) {
  ExperimentConfig cfg;
  cfg.kind = ExperimentKind::EnergyRun;
  cfg.qubits = {2};
  cfg.modes = {4};
  cfg.iterations = 20;
  cfg.seeds = {1, 2};
  const auto r = run_energy_experiment(cfg);
  ASSERT_EQ(r.summary.size(), 2u);
  for (const auto& row : r.summary) {
    EXPECT_NEAR(row.ground_energy, -1.0, 1e-12);
    EXPECT_LE(row.min_delta_e, row.final_delta_e);
  }
  for (const auto& run : r.runs) {
    for (const auto& s : run.result.steps) EXPECT_GE(s.figure_of_merit, -1e-9);
  }
}

TEST(Energy, RandomProblemDependsOnSeed) {
  const ComplexMatrix a = energy_problem(ProblemFamily::Random, 3, 1);
  EXPECT_EQ(a, energy_problem(ProblemFamily::Random, 3, 1));
  EXPECT_NE(a, energy_problem(ProblemFamily::Random, 3, 2));
  EXPECT_EQ(energy_problem(ProblemFamily::Fixed, 3, 5),
            fixed_problem_hamiltonian(3));
}

TEST(Statistics, MatchesDirectFormulas) {
  const std::vector<double> v{1.0, 2.0, 4.0, 7.0, -3.0};
  const auto s = sample_statistics(v);
  EXPECT_NEAR(s.mean, 2.2, 1e-15);
  double m2 = 0.0;
  double m4 = 0.0;
  for (double x : v) {
    m2 += std::pow(x - 2.2, 2);
    m4 += std::pow(x - 2.2, 4);
  }
  const double var = m2 / 4.0;
  EXPECT_NEAR(s.variance, var, 1e-12);
  EXPECT_NEAR(s.variance_stderr,
              std::sqrt((m4 / 5.0 - (2.0 / 4.0) * var * var) / 5.0), 1e-12);
  EXPECT_THROW(sample_statistics(std::vector<double>{1.0}), std::invalid_argument);
}

TEST(Statistics, NormalSampleStandardError) {
  // For Gaussian data Var(s^2) = 2 sigma^4 / (n - 1).
  std::mt19937_64 gen(3);
  std::normal_distribution<double> nd(0.0, 2.0);
  std::vector<double> v(20000);
  for (double& x : v) x = nd(gen);
  const auto s = sample_statistics(v);
  EXPECT_NEAR(s.variance, 4.0, 0.15);
  EXPECT_NEAR(s.variance_stderr, std::sqrt(2 * 16.0 / 19999), 0.004);
}

TEST(Scan, ZeroRadiusGivesZeroVariance) {
  const auto evo = EvolutionConfig::for_modes(4);
  for (AnsatzKind a : {AnsatzKind::Fourier, AnsatzKind::StepWise}) {
    const ScanRecord r = scan_point(a, 2, 4, 0.0, 100, 1, evo, 2);
    EXPECT_EQ(r.grad_var, 0.0);
    EXPECT_EQ(r.n_samples, 100);
  }
}

TEST(ScanProperty, StandardErrorShrinksWithSamples) {
  const auto evo = EvolutionConfig::for_modes(4);
  const ScanRecord a = scan_point(AnsatzKind::StepWise, 2, 4, 4 * kPi, 200, 1, evo, 4);
  const ScanRecord b = scan_point(AnsatzKind::StepWise, 2, 4, 4 * kPi, 800, 1, evo, 4);
  EXPECT_GT(a.grad_var, 0.0);
  EXPECT_TRUE(std::isfinite(b.var_stderr));
  // Quadrupling n halves the standard error up to sampling noise.
  EXPECT_NEAR(b.var_stderr / a.var_stderr, 0.5, 0.2);
}

TEST(Scan, GradientsIndependentOfWorkerCount) {
  const auto evo = EvolutionConfig::for_modes(4);
  EXPECT_EQ(sample_gradients(AnsatzKind::Fourier, 2, 4, 3.0, 20, 5, evo, 1),
            sample_gradients(AnsatzKind::Fourier, 2, 4, 3.0, 20, 5, evo, 3));
}

TEST(Scan, RunWritesTableWithDocumentedHeader) {
  const auto dir = fresh_dir("fqp_harness_scan");
  ExperimentConfig cfg;
  cfg.kind = ExperimentKind::VarianceScan;
  cfg.ansatze = {AnsatzKind::StepWise, AnsatzKind::Fourier};
  cfg.qubits = {2};
  cfg.modes = {4};
  cfg.theta_max_grid = {0.5, 5.0};
  cfg.samples = 100;
  cfg.out = dir;
  const auto records = run_variance_scan(cfg);
  ASSERT_EQ(records.size(), 4u);
  EXPECT_EQ(records.front().ansatz, AnsatzKind::Fourier);
  for (const auto& r : records) {
    EXPECT_GE(r.grad_var, 0.0);
    EXPECT_TRUE(std::isfinite(r.grad_var));
  }
  const std::string text = slurp(dir / "variance_scan.csv");
  EXPECT_EQ(text.substr(0, text.find('\n')),
            "ansatz,n_q,theta_max,n_samples,grad_mean,grad_var,var_stderr");
  std::filesystem::remove_all(dir);
}

TEST(Tables, ScanAndTrainingRoundTrip) {
  const std::vector<ScanRecord> recs{
      {AnsatzKind::Fourier, 2, 0.1, 100, 1e-3, 2.5e-4, 1e-5},
      {AnsatzKind::StepWise, 5, 12.566370614359172, 500, -0.2, 0.0, 0.0}};
  EXPECT_EQ(scan_records_from_table(
                table_from_json_text(to_json_text(scan_table(recs)))),
            recs);
  const std::vector<TrainingStep> steps{{0, 0.5, 0.4, 1.2, 3.0, 0.0},
                                        {1, 0.25, 0.2, 1.3, 2.0, 0.01}};
  const auto back = training_steps_from_table(
      table_from_json_text(to_json_text(training_table(steps))));
  ASSERT_EQ(back.size(), 2u);
  EXPECT_EQ(back[1].loss, 0.25);
  EXPECT_EQ(back[1].iteration, 1);
  EXPECT_EQ(to_csv(scan_table({})),
            "ansatz,n_q,theta_max,n_samples,grad_mean,grad_var,var_stderr\n");
}

TEST(Fit, RecoversExponentialRate) {
  const std::vector<double> x{2, 3, 4, 5, 6};
  std::vector<double> v;
  for (double q : x) v.push_back(3.0 * std::pow(0.5, q));
  EXPECT_NEAR(fit_log_slope(x, v), std::log(0.5), 1e-12);
  EXPECT_THROW(fit_log_slope(x, std::vector<double>{1, 1, 0, 1, 1}),
               std::domain_error);
}

}  // namespace
}  // namespace fqp

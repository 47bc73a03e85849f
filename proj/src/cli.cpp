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

#include "fqp/cli.hpp"

#include <algorithm>
#include <array>
#include <fstream>
#include <sstream>

#include "CLI11.hpp"
#include "fqp/harness.hpp"

namespace fqp {

namespace {

// Raw flag values of one subcommand. Only flags the user actually passed are
// copied onto the config, so file values survive unless overridden.
struct Flags {
  CLI::App* app = nullptr;
  ExperimentKind kind = ExperimentKind::QftSweep;

  std::string config;
  std::vector<int> qubits;
  std::vector<int> modes;
  std::vector<std::string> ansatz;
  int iterations = 0;
  std::vector<std::uint64_t> seeds;
  std::vector<double> theta_grid;
  int samples = 0;
  bool qng = true;
  int trotter_steps = 0;
  std::string out;
  std::string format;
  int workers = 0;
  int input_states = 0;
  std::string hamiltonian;
  double stop_below = 0.0;
  bool timing = false;
  bool large = false;

  CLI::Option* o_qubits = nullptr;
  CLI::Option* o_modes = nullptr;
  CLI::Option* o_ansatz = nullptr;
  CLI::Option* o_iterations = nullptr;
  CLI::Option* o_seeds = nullptr;
  CLI::Option* o_theta = nullptr;
  CLI::Option* o_samples = nullptr;
  CLI::Option* o_qng = nullptr;
  CLI::Option* o_trotter = nullptr;
  CLI::Option* o_out = nullptr;
  CLI::Option* o_format = nullptr;
  CLI::Option* o_workers = nullptr;
  CLI::Option* o_inputs = nullptr;
  CLI::Option* o_hamiltonian = nullptr;
  CLI::Option* o_stop = nullptr;
  CLI::Option* o_timing = nullptr;
  CLI::Option* o_large = nullptr;
};

void add_flags(CLI::App& sub, Flags& f) {
  f.app = &sub;
  sub.add_option("--config", f.config, "JSON config file; flags override it")
      ->check(CLI::ExistingFile);
  f.o_qubits = sub.add_option("--qubits", f.qubits, "qubit counts")
                   ->delimiter(',');
  f.o_modes = sub.add_option("--modes", f.modes, "mode counts n_f")
                  ->delimiter(',');
  f.o_ansatz = sub.add_option("--ansatz", f.ansatz, "fourier and/or stepwise")
                   ->delimiter(',')
                   ->check(CLI::IsMember({"fourier", "stepwise"}));
  f.o_iterations = sub.add_option("--iterations", f.iterations,
                                  "optimizer iterations per run");
  f.o_seeds = sub.add_option("--seeds", f.seeds, "seed list")->delimiter(',');
  f.o_theta = sub.add_option("--theta-max-grid", f.theta_grid,
                             "theta_max grid of the variance scan")
                  ->delimiter(',');
  f.o_samples = sub.add_option("--samples", f.samples,
                               "parameter samples per scan point");
  f.o_qng = sub.add_flag("--qng,!--no-qng", f.qng,
                         "quantum natural gradient (QFT training)");
  f.o_trotter = sub.add_option("--trotter-steps", f.trotter_steps,
                               "time slices (0 = max(256, 8 n_f))");
  f.o_out = sub.add_option("--out", f.out, "output directory");
  f.o_format = sub.add_option("--format", f.format, "csv or json")
                   ->check(CLI::IsMember({"csv", "json"}));
  f.o_workers = sub.add_option("--workers", f.workers,
                               "worker threads (0 = all cores)");
  f.o_inputs = sub.add_option("--input-states", f.input_states,
                              "random input states per iteration");
  f.o_hamiltonian =
      sub.add_option("--hamiltonian", f.hamiltonian, "fixed or random")
          ->check(CLI::IsMember({"fixed", "random"}));
  f.o_stop = sub.add_option("--stop-below", f.stop_below,
                            "stop once epsilon or Delta E drops below");
  f.o_timing = sub.add_flag("--timing", f.timing, "record wall-clock seconds");
  f.o_large = sub.add_flag("--large", f.large,
                           "allow scans up to n_q = 8, n_f = 128");
}

nlohmann::json read_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw ConfigError("cannot read config file " + path);
  }
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError("config file " + path + ": " + e.what());
  }
}

ExperimentConfig build_config(const Flags& f) {
  ExperimentConfig cfg;
  if (!f.config.empty()) {
    apply_config_json(read_config_file(f.config), cfg);
  }
  cfg.kind = f.kind;
  const auto given = [](const CLI::Option* o) { return o->count() > 0; };
  if (given(f.o_qubits)) cfg.qubits = f.qubits;
  if (given(f.o_modes)) cfg.modes = f.modes;
  if (given(f.o_ansatz)) {
    cfg.ansatze.clear();
    for (const auto& a : f.ansatz) {
      cfg.ansatze.push_back(parse_ansatz_kind(a));
    }
  }
  if (given(f.o_iterations)) cfg.iterations = f.iterations;
  if (given(f.o_seeds)) cfg.seeds = f.seeds;
  if (given(f.o_theta)) cfg.theta_max_grid = f.theta_grid;
  if (given(f.o_samples)) cfg.samples = f.samples;
  if (given(f.o_qng)) cfg.qng = f.qng;
  if (given(f.o_trotter)) cfg.trotter_steps = f.trotter_steps;
  if (given(f.o_out)) cfg.out = f.out;
  if (given(f.o_format)) cfg.format = parse_output_format(f.format);
  if (given(f.o_workers)) cfg.workers = f.workers;
  if (given(f.o_inputs)) cfg.input_states = f.input_states;
  if (given(f.o_hamiltonian)) {
    cfg.problem = f.hamiltonian == "random" ? ProblemFamily::Random
                                            : ProblemFamily::Fixed;
  }
  if (given(f.o_stop)) cfg.stop_below = f.stop_below;
  if (given(f.o_timing)) cfg.timing = f.timing;
  if (given(f.o_large)) cfg.large = f.large;
  cfg.validate();
  return cfg;
}

std::string render(const Table& table, OutputFormat format) {
  return format == OutputFormat::Csv ? to_csv(table) : to_json_text(table);
}

void execute(const ExperimentConfig& cfg, std::ostream& out) {
  switch (cfg.kind) {
    case ExperimentKind::QftSweep:
      out << render(sweep_summary_table(run_qft_sweep(cfg).summary),
                    cfg.format);
      break;
    case ExperimentKind::EnergyRun:
      out << render(energy_summary_table(run_energy_experiment(cfg).summary),
                    cfg.format);
      break;
    case ExperimentKind::VarianceScan:
      out << render(scan_table(run_variance_scan(cfg)), cfg.format);
      break;
  }
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err) {
  CLI::App app{"Fourier-mode analogue quantum control experiments", "fqp"};
  app.require_subcommand(1);

  std::array<Flags, 3> flags;
  const std::array<std::pair<const char*, const char*>, 3> subs{{
      {"train-qft", "compile the QFT over an (ansatz, n_q, n_f, seed) sweep"},
      {"train-energy", "ground-state preparation with the identity metric"},
      {"variance-scan", "gradient variance versus theta_max and n_q"},
  }};
  for (std::size_t i = 0; i < subs.size(); ++i) {
    flags[i].kind = static_cast<ExperimentKind>(i);
    add_flags(*app.add_subcommand(subs[i].first, subs[i].second), flags[i]);
  }

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    std::ostringstream msg;
    const int code = app.exit(e, out, msg);
    err << msg.str();
    return code == 0 ? kExitOk : kExitConfigError;
  }

  const auto chosen = std::find_if(flags.begin(), flags.end(), [](const Flags& f) {
    return f.app->parsed();
  });
  try {
    execute(build_config(*chosen), out);
  } catch (const ConfigError& e) {
    err << "configuration error: " << e.what() << "\n";
    return kExitConfigError;
  } catch (const NumericalAbort& e) {
    err << "numerical abort: " << e.what() << "\n";
    return kExitNumericalAbort;
  } catch (const std::domain_error& e) {
    err << "numerical abort: " << e.what() << "\n";
    return kExitNumericalAbort;
  } catch (const std::invalid_argument& e) {
    err << "configuration error: " << e.what() << "\n";
    return kExitConfigError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitConfigError;
  }
  return kExitOk;
}

}  // namespace fqp

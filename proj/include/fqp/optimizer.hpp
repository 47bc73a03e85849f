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
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "fqp/ansatz.hpp"
#include "fqp/evolution.hpp"
#include "fqp/objectives.hpp"

namespace fqp {

/// Raised by qng_step when the (regularized) metric cannot be factorized.
/// Callers retry with a positive regularization.
class SingularMetricError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

using LossFunction = std::function<double(const ParameterSet&)>;

// Parameter (j, k) maps to flat index j * n_modes + k everywhere a matrix of
// coefficients is treated as a vector (metric rows/columns, solves).
Eigen::VectorXd flatten(const RealMatrix& m);
RealMatrix unflatten(const Eigen::VectorXd& v, int rows, int cols);

/// Forward differences (L(theta + delta e_jk) - L(theta)) / delta for every
/// coordinate. `loss` must be deterministic (fixed input-state sample) so
/// the base and perturbed evaluations share their random numbers.
/// Throws std::domain_error on a non-finite loss.
RealMatrix finite_diff_gradient(const LossFunction& loss, const ParameterSet& p,
                                double delta, int workers = 1);

/// Central differences (L(theta + delta e) - L(theta - delta e)) / (2 delta).
RealMatrix central_diff_gradient(const LossFunction& loss,
                                 const ParameterSet& p, double delta,
                                 int workers = 1);
double central_diff_component(const LossFunction& loss, const ParameterSet& p,
                              int j, int k, double delta);

/// Derivative of <0|U^dag H_p U|0> with respect to coeffs(j, k) of a Fourier
/// protocol, from the time-nonlocal expression
///
///   dL/dtheta_{j,k} = 2 int_0^1 sin(pi (k+1) t) Im <chi(t)|H_j|psi(t)> dt,
///   psi(t) = U(t <- 0)|0>,   chi(t) = U(1 <- t)^dag H_p psi(1),
///
/// evaluated at the slice midpoints of the Trotter grid. Slices are split in
/// half with expm_hermitian, so this path shares no kernel with the Taylor
/// propagation. Cross-check only. Throws std::invalid_argument for a
/// StepWise parameter set.
double analytic_gradient_oracle(const ParameterSet& p, const ControlSystem& sys,
                                const ComplexMatrix& problem,
                                const EvolutionConfig& cfg, int j = 0,
                                int k = 0);

/// Fubini-Study metric of |psi> = U_theta|input> by finite differences,
///   g_ab = Re[<d_a psi|d_b psi> - <d_a psi|psi><psi|d_b psi>],
/// with |d_a psi> ~ (U_{theta + delta e_a}|input> - |psi>) / delta. Computed
/// as Re[(P D)^dag (P D)] with P = 1 - |psi><psi|, so the result is
/// symmetric positive semidefinite up to rounding.
RealMatrix fubini_study_metric(const ParameterSet& p, const ControlSystem& sys,
                               const EvolutionConfig& cfg,
                               const StateVector& input, double delta,
                               int workers = 1);

/// Solves (g + lambda I) dtheta = -eta grad on the flattened parameters.
RealMatrix qng_step(const RealMatrix& metric, const RealMatrix& grad,
                    double eta, double lambda_reg);

struct AdamState {
  AdamState(int rows, int cols);

  RealMatrix first_moment;
  RealMatrix second_moment;
  std::int64_t iteration = 0;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;
  double step_size = 0.01;
};

/// Bias-corrected ADAM. Advances `state` and returns the increment to add to
/// the parameters: -step_size * m_hat / (sqrt(v_hat) + epsilon).
RealMatrix adam_update(AdamState& state, const RealMatrix& grad);

/// How the natural-gradient direction becomes a parameter update.
/// AdamOnNatural feeds the direction (eta = 1) to ADAM as if it were the
/// gradient. NaturalFixedRate applies -natural_rate (g + lambda)^-1 grad.
enum class UpdateRule { AdamOnNatural, NaturalFixedRate };

std::string_view to_string(UpdateRule rule);
UpdateRule parse_update_rule(std::string_view name);

struct TrainConfig {
  AnsatzKind ansatz = AnsatzKind::Fourier;
  int n_modes = 8;
  int iterations = 300;
  bool use_qng = true;
  std::uint64_t seed = 1;
  /// Overrides EvolutionConfig::for_modes(n_modes) when set.
  std::optional<EvolutionConfig> evolution;
  double gradient_delta = 1e-7;
  double metric_delta = 1e-7;
  double metric_regularization = 1e-6;
  /// Number of sampled input states the metric is averaged over (the first
  /// ones of the iteration's sample).
  int metric_states = 1;
  double step_size = 0.01;
  UpdateRule update_rule = UpdateRule::AdamOnNatural;
  double natural_rate = 0.05;
  /// Stop once the figure of merit (epsilon or Delta E) drops below this.
  std::optional<double> stop_below;
  bool record_timing = false;
  int workers = 1;
};

/// One row per iteration, evaluated at the parameters before that
/// iteration's update.
struct TrainingStep {
  int iteration = 0;
  double loss = 0.0;
  /// Exact implementation error (compilation) or <E> - E_0 (energy).
  double figure_of_merit = 0.0;
  double action = 0.0;
  double grad_norm = 0.0;
  /// Wall-clock seconds since the start of training; 0 unless timing is on.
  double seconds = 0.0;
};

struct TrainingResult {
  ParameterSet initial;
  ParameterSet final_parameters;
  std::vector<TrainingStep> steps;
  /// Ground energy of H_p for energy objectives.
  std::optional<double> ground_energy;
  bool aborted = false;
  std::string diagnostic;

  /// Iteration with the smallest figure of merit, or nullopt when empty.
  std::optional<std::size_t> best_index() const;
  /// First iteration whose figure of merit is below `threshold`.
  std::optional<int> iterations_to(double threshold) const;
};

/// Stochastic natural-gradient training loop. Per iteration: sample input
/// states (compilation), evaluate the loss, forward-difference gradient,
/// optional Fubini-Study metric and regularized solve for the natural
/// direction (eta = 1), ADAM on that direction, apply the step.
///
/// Random streams: Rng(seed).split() seeds the initialization, the next
/// split() seeds the input-state sampler.
TrainingResult train(const ObjectiveSpec& objective, const TrainConfig& cfg);

}  // namespace fqp

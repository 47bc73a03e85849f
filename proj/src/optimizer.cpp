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

#include "fqp/optimizer.hpp"

#include <chrono>
#include <cmath>
#include <numbers>
#include <sstream>

#include "fqp/parallel.hpp"

namespace fqp {

namespace {

double checked(double value, const char* what) {
  if (!std::isfinite(value)) {
    throw std::domain_error(std::string(what) + ": non-finite loss value");
  }
  return value;
}

}  // namespace

Eigen::VectorXd flatten(const RealMatrix& m) {
  Eigen::VectorXd v(m.size());
  Eigen::Index i = 0;
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      v[i++] = m(r, c);
    }
  }
  return v;
}

RealMatrix unflatten(const Eigen::VectorXd& v, int rows, int cols) {
  if (v.size() != static_cast<Eigen::Index>(rows) * cols) {
    throw std::invalid_argument("unflatten: size mismatch");
  }
  RealMatrix m(rows, cols);
  Eigen::Index i = 0;
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) {
      m(r, c) = v[i++];
    }
  }
  return m;
}

RealMatrix finite_diff_gradient(const LossFunction& loss, const ParameterSet& p,
                                double delta, int workers) {
  if (!(delta > 0.0)) {
    throw std::invalid_argument("finite_diff_gradient: delta must be > 0");
  }
  const double base = checked(loss(p), "finite_diff_gradient");
  const int n_f = p.n_modes();
  RealMatrix grad(p.n_controls(), n_f);
  parallel_for(
      static_cast<std::size_t>(p.size()),
      [&](std::size_t i) {
        const int j = static_cast<int>(i) / n_f;
        const int k = static_cast<int>(i) % n_f;
        const double shifted =
            checked(loss(p.perturbed(j, k, delta)), "finite_diff_gradient");
        grad(j, k) = (shifted - base) / delta;
      },
      workers);
  return grad;
}

double central_diff_component(const LossFunction& loss, const ParameterSet& p,
                              int j, int k, double delta) {
  if (!(delta > 0.0)) {
    throw std::invalid_argument("central_diff_component: delta must be > 0");
  }
  const double up = checked(loss(p.perturbed(j, k, delta)), "central_diff");
  const double down = checked(loss(p.perturbed(j, k, -delta)), "central_diff");
  return (up - down) / (2.0 * delta);
}

RealMatrix central_diff_gradient(const LossFunction& loss,
                                 const ParameterSet& p, double delta,
                                 int workers) {
  const int n_f = p.n_modes();
  RealMatrix grad(p.n_controls(), n_f);
  parallel_for(
      static_cast<std::size_t>(p.size()),
      [&](std::size_t i) {
        const int j = static_cast<int>(i) / n_f;
        const int k = static_cast<int>(i) % n_f;
        grad(j, k) = central_diff_component(loss, p, j, k, delta);
      },
      workers);
  return grad;
}

double analytic_gradient_oracle(const ParameterSet& p, const ControlSystem& sys,
                                const ComplexMatrix& problem,
                                const EvolutionConfig& cfg, int j, int k) {
  if (p.kind() != AnsatzKind::Fourier) {
    throw std::invalid_argument(
        "analytic_gradient_oracle: only defined for the Fourier ansatz");
  }
  if (problem.rows() != sys.dim() || !is_hermitian(problem)) {
    throw std::invalid_argument(
        "analytic_gradient_oracle: problem Hamiltonian must be Hermitian and "
        "match the system dimension");
  }
  if (j < 0 || j >= p.n_controls() || k < 0 || k >= p.n_modes()) {
    throw std::out_of_range("analytic_gradient_oracle: index out of range");
  }
  const int n = cfg.n_steps;
  const double dt = 1.0 / n;
  const RealMatrix w = slice_weights(p, n);

  std::vector<ComplexMatrix> half(static_cast<std::size_t>(n));
  for (int m = 0; m < n; ++m) {
    half[static_cast<std::size_t>(m)] =
        expm_hermitian(sys.hamiltonian(w.col(m)), 0.5 * dt);
  }

  // Forward states at slice midpoints.
  std::vector<ComplexVector> psi_mid(static_cast<std::size_t>(n));
  ComplexVector psi = ComplexVector::Zero(sys.dim());
  psi[0] = 1.0;
  for (int m = 0; m < n; ++m) {
    const auto& e = half[static_cast<std::size_t>(m)];
    psi_mid[static_cast<std::size_t>(m)] = e * psi;
    psi = e * psi_mid[static_cast<std::size_t>(m)];
  }

  // Costate H_p psi(1) propagated backwards to each midpoint.
  ComplexVector chi = problem * psi;
  const ComplexMatrix& hj = sys.generator(j);
  double sum = 0.0;
  for (int m = n - 1; m >= 0; --m) {
    const auto& e = half[static_cast<std::size_t>(m)];
    const ComplexVector chi_mid = e.adjoint() * chi;
    const double t = (m + 0.5) * dt;
    const Complex x =
        chi_mid.dot(hj * psi_mid[static_cast<std::size_t>(m)]);
    sum += std::sin(std::numbers::pi * (k + 1) * t) * x.imag();
    chi = e.adjoint() * chi_mid;
  }
  return 2.0 * dt * sum;
}

RealMatrix fubini_study_metric(const ParameterSet& p, const ControlSystem& sys,
                               const EvolutionConfig& cfg,
                               const StateVector& input, double delta,
                               int workers) {
  if (!(delta > 0.0)) {
    throw std::invalid_argument("fubini_study_metric: delta must be > 0");
  }
  if (input.dim() != sys.dim()) {
    throw std::invalid_argument("fubini_study_metric: state dimension");
  }
  const ComplexVector psi = evolve(p, sys, cfg, input.amplitudes());
  const int n_f = p.n_modes();
  ComplexMatrix d(sys.dim(), p.size());
  parallel_for(
      static_cast<std::size_t>(p.size()),
      [&](std::size_t i) {
        const int j = static_cast<int>(i) / n_f;
        const int k = static_cast<int>(i) % n_f;
        const ComplexVector shifted =
            evolve(p.perturbed(j, k, delta), sys, cfg, input.amplitudes());
        d.col(static_cast<Eigen::Index>(i)) = (shifted - psi) / delta;
      },
      workers);
  const ComplexMatrix projected = d - psi * (psi.adjoint() * d);
  RealMatrix g = (projected.adjoint() * projected).real();
  return 0.5 * (g + g.transpose());
}

RealMatrix qng_step(const RealMatrix& metric, const RealMatrix& grad,
                    double eta, double lambda_reg) {
  const Eigen::Index n = grad.size();
  if (metric.rows() != n || metric.cols() != n) {
    throw std::invalid_argument("qng_step: metric is " +
                                std::to_string(metric.rows()) + "x" +
                                std::to_string(metric.cols()) +
                                ", gradient has " + std::to_string(n) +
                                " entries");
  }
  if (lambda_reg < 0.0) {
    throw std::invalid_argument("qng_step: regularization must be >= 0");
  }
  if ((metric - metric.transpose()).cwiseAbs().maxCoeff() >
      1e-10 * std::max(1.0, metric.cwiseAbs().maxCoeff())) {
    throw std::invalid_argument("qng_step: metric is not symmetric");
  }
  const RealMatrix a =
      metric + lambda_reg * RealMatrix::Identity(n, n);
  Eigen::LDLT<RealMatrix> ldlt(a);
  const double scale = std::max(1.0, a.diagonal().cwiseAbs().maxCoeff());
  if (ldlt.info() != Eigen::Success ||
      ldlt.vectorD().cwiseAbs().minCoeff() <= 1e-14 * scale) {
    throw SingularMetricError(
        "qng_step: metric is singular; retry with lambda_reg > 0");
  }
  const Eigen::VectorXd rhs = -eta * flatten(grad);
  const Eigen::VectorXd x = ldlt.solve(rhs);
  if (!x.allFinite()) {
    throw SingularMetricError("qng_step: solve produced non-finite values");
  }
  return unflatten(x, static_cast<int>(grad.rows()),
                   static_cast<int>(grad.cols()));
}

AdamState::AdamState(int rows, int cols)
    : first_moment(RealMatrix::Zero(rows, cols)),
      second_moment(RealMatrix::Zero(rows, cols)) {}

RealMatrix adam_update(AdamState& state, const RealMatrix& grad) {
  if (grad.rows() != state.first_moment.rows() ||
      grad.cols() != state.first_moment.cols()) {
    throw std::invalid_argument("adam_update: shape mismatch");
  }
  ++state.iteration;
  state.first_moment =
      state.beta1 * state.first_moment + (1.0 - state.beta1) * grad;
  state.second_moment = state.beta2 * state.second_moment +
                        (1.0 - state.beta2) * grad.cwiseAbs2();
  const double t = static_cast<double>(state.iteration);
  const double c1 = 1.0 - std::pow(state.beta1, t);
  const double c2 = 1.0 - std::pow(state.beta2, t);
  return (-state.step_size * (state.first_moment.array() / c1) /
          ((state.second_moment.array() / c2).sqrt() + state.epsilon))
      .matrix();
}

std::string_view to_string(UpdateRule rule) {
  return rule == UpdateRule::AdamOnNatural ? "adam" : "natural";
}

UpdateRule parse_update_rule(std::string_view name) {
  if (name == "adam") {
    return UpdateRule::AdamOnNatural;
  }
  if (name == "natural") {
    return UpdateRule::NaturalFixedRate;
  }
  throw std::invalid_argument("unknown update rule '" + std::string(name) +
                              "' (expected adam or natural)");
}

std::optional<std::size_t> TrainingResult::best_index() const {
  if (steps.empty()) {
    return std::nullopt;
  }
  std::size_t best = 0;
  for (std::size_t i = 1; i < steps.size(); ++i) {
    if (steps[i].figure_of_merit < steps[best].figure_of_merit) {
      best = i;
    }
  }
  return best;
}

std::optional<int> TrainingResult::iterations_to(double threshold) const {
  for (const auto& s : steps) {
    if (s.figure_of_merit < threshold) {
      return s.iteration;
    }
  }
  return std::nullopt;
}

TrainingResult train(const ObjectiveSpec& objective, const TrainConfig& cfg) {
  if (cfg.iterations < 0 || cfg.n_modes < 1 || cfg.metric_states < 1) {
    throw std::invalid_argument("train: invalid configuration");
  }
  const int n_q = objective.n_qubits();
  const ControlSystem sys = build_ising_system(n_q);
  const EvolutionConfig evo =
      cfg.evolution.value_or(EvolutionConfig::for_modes(cfg.n_modes));
  const int dim = sys.dim();
  const bool compiling =
      objective.kind() == ObjectiveKind::UnitaryCompilation;

  Rng master(cfg.seed);
  Rng init_rng = master.split();
  Rng sample_rng = master.split();

  ParameterSet theta = init_parameters(cfg.ansatz, n_q, cfg.n_modes, init_rng);
  TrainingResult result{theta, theta, {}, std::nullopt, false, {}};
  if (!compiling) {
    result.ground_energy = ground_energy(objective.target());
  }

  AdamState adam(theta.n_controls(), theta.n_modes());
  adam.step_size = cfg.step_size;

  const auto start = std::chrono::steady_clock::now();
  std::vector<StateVector> states;
  ComplexMatrix inputs;
  ComplexMatrix target_images;
  const ComplexVector ground_input = StateVector::basis(n_q, 0).amplitudes();

  for (int it = 0; it < cfg.iterations; ++it) {
    if (compiling && (it == 0 || objective.resample_each_iteration())) {
      states = random_input_states(n_q, objective.n_input_samples(), sample_rng);
      inputs.resize(dim, static_cast<Eigen::Index>(states.size()));
      for (std::size_t s = 0; s < states.size(); ++s) {
        inputs.col(static_cast<Eigen::Index>(s)) = states[s].amplitudes();
      }
      target_images = objective.target() * inputs;
    }

    // Loss on the fixed sample of this iteration. Evolving the identity is
    // cheaper than evolving the sample once it has at least dim columns.
    LossFunction loss = [&](const ParameterSet& q) {
      if (compiling) {
        const ComplexMatrix images =
            inputs.cols() >= dim ? ComplexMatrix(propagate(q, sys, evo) * inputs)
                                 : evolve(q, sys, evo, inputs);
        return unitary_loss_from_images(images, target_images);
      }
      return expectation(evolve(q, sys, evo, ground_input), objective.target());
    };

    TrainingStep step;
    step.iteration = it;
    RealMatrix grad;
    try {
      step.loss = checked(loss(theta), "train");
      grad = finite_diff_gradient(loss, theta, cfg.gradient_delta, cfg.workers);
    } catch (const std::domain_error& e) {
      result.aborted = true;
      std::ostringstream msg;
      msg << "iteration " << it << ": " << e.what();
      result.diagnostic = msg.str();
      break;
    }
    if (compiling) {
      step.figure_of_merit =
          implementation_error(propagate(theta, sys, evo), objective.target());
    } else {
      step.figure_of_merit = step.loss - *result.ground_energy;
    }
    step.action = effective_action(theta);
    step.grad_norm = grad.norm();

    RealMatrix direction = grad;
    RealMatrix update;
    if (cfg.use_qng) {
      const int n_metric =
          compiling ? std::min<int>(cfg.metric_states,
                                    static_cast<int>(states.size()))
                    : 1;
      RealMatrix metric = RealMatrix::Zero(theta.size(), theta.size());
      for (int s = 0; s < n_metric; ++s) {
        const StateVector input =
            compiling ? states[static_cast<std::size_t>(s)]
                      : StateVector(ground_input);
        metric += fubini_study_metric(theta, sys, evo, input, cfg.metric_delta,
                                      cfg.workers);
      }
      metric /= n_metric;
      try {
        if (cfg.update_rule == UpdateRule::NaturalFixedRate) {
          update = qng_step(metric, grad, cfg.natural_rate,
                            cfg.metric_regularization);
        } else {
          // qng_step returns the descent increment; ADAM expects a gradient.
          direction = -qng_step(metric, grad, 1.0, cfg.metric_regularization);
        }
      } catch (const SingularMetricError& e) {
        result.steps.push_back(step);
        result.aborted = true;
        result.diagnostic = "iteration " + std::to_string(it) + ": " + e.what();
        break;
      }
    }
    if (update.size() == 0) {
      update = adam_update(adam, direction);
    }
    if (cfg.record_timing) {
      step.seconds = std::chrono::duration<double>(
                         std::chrono::steady_clock::now() - start)
                         .count();
    }
    result.steps.push_back(step);
    if (cfg.stop_below && step.figure_of_merit < *cfg.stop_below) {
      break;
    }
    if (!update.allFinite()) {
      result.aborted = true;
      result.diagnostic =
          "iteration " + std::to_string(it) + ": non-finite parameter update";
      break;
    }
    theta = theta.shifted(update);
  }
  result.final_parameters = theta;
  return result;
}

}  // namespace fqp

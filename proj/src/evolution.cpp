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

#include "fqp/evolution.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace fqp {

namespace {

constexpr int kMaxTaylorTerms = 60;
// A slice whose norm bound needs more substeps than this is treated as a
// runaway protocol rather than integrated.
constexpr double kMaxSubsteps = 1e7;

void check_compatible(const ParameterSet& p, const ControlSystem& sys,
                      const EvolutionConfig& cfg) {
  if (p.n_controls() != sys.n_controls() || p.n_qubits() != sys.n_qubits()) {
    throw std::invalid_argument(
        "propagate: parameter set has " + std::to_string(p.n_controls()) +
        " controls, control system has " + std::to_string(sys.n_controls()));
  }
  if (cfg.n_steps < 1) {
    throw std::invalid_argument("propagate: n_steps must be positive");
  }
  if (!p.coeffs().allFinite()) {
    throw std::invalid_argument("propagate: non-finite coefficients");
  }
}

void apply_taylor(const ControlSystem& sys, const RealVector& weights,
                  double dt, ComplexMatrix& block) {
  thread_local std::vector<Complex> values;
  thread_local std::vector<Complex> term;
  thread_local std::vector<Complex> next;
  const double reach = sys.combine(weights, values) * std::abs(dt);
  if (reach == 0.0) {
    return;
  }
  if (!(reach <= kMaxSubsteps)) {
    throw std::domain_error("propagate: slice norm " + std::to_string(reach) +
                            " exceeds the integrator range");
  }
  const int substeps = std::max(1, static_cast<int>(std::ceil(reach)));
  const double h = dt / substeps;
  const auto size = static_cast<std::size_t>(block.size());
  term.resize(size);
  next.resize(size);
  Complex* acc = block.data();
  for (int s = 0; s < substeps; ++s) {
    std::copy(acc, acc + size, term.begin());
    for (int n = 1; n <= kMaxTaylorTerms; ++n) {
      sys.apply_combined(values, term.data(), next.data(), block.cols());
      const Complex c(0.0, -h / n);
      double term_max = 0.0;
      double acc_max = 0.0;
      for (std::size_t i = 0; i < size; ++i) {
        const Complex t = c * next[i];
        term[i] = t;
        acc[i] += t;
        term_max = std::max(term_max, std::norm(t));
        acc_max = std::max(acc_max, std::norm(acc[i]));
      }
      // |H h| <= 1 makes term norms strictly decreasing, so the first
      // negligible term ends the series (squared magnitudes, 2^-54 relative).
      if (term_max <= 0x1.0p-108 * acc_max) {
        break;
      }
    }
  }
}

}  // namespace

EvolutionConfig EvolutionConfig::for_modes(int n_modes) {
  EvolutionConfig cfg;
  cfg.n_steps = std::max(256, 8 * n_modes);
  return cfg;
}

RealMatrix slice_weights(const ParameterSet& p, int n_steps) {
  RealMatrix basis(p.n_modes(), n_steps);
  for (int m = 0; m < n_steps; ++m) {
    const double t = (m + 0.5) / n_steps;
    basis.col(m) = basis_values(p.kind(), p.n_modes(), t);
  }
  return p.coeffs() * basis;
}

void apply_slice(const ControlSystem& sys, const RealVector& weights, double dt,
                 SliceExponential method, ComplexMatrix& block) {
  switch (method) {
    case SliceExponential::Taylor:
      apply_taylor(sys, weights, dt, block);
      break;
    case SliceExponential::Eigendecomposition:
      block = expm_hermitian(sys.hamiltonian(weights), dt) * block;
      break;
  }
}

void apply_slices(const ControlSystem& sys, const RealMatrix& weights,
                  int first, int last, SliceExponential method,
                  ComplexMatrix& block) {
  const double dt = 1.0 / static_cast<double>(weights.cols());
  for (int m = first; m < last; ++m) {
    apply_slice(sys, weights.col(m), dt, method, block);
  }
}

ComplexMatrix evolve(const ParameterSet& p, const ControlSystem& sys,
                     const EvolutionConfig& cfg, ComplexMatrix block) {
  check_compatible(p, sys, cfg);
  if (block.rows() != sys.dim()) {
    throw std::invalid_argument("evolve: block has " +
                                std::to_string(block.rows()) +
                                " rows, Hilbert space dimension is " +
                                std::to_string(sys.dim()));
  }
  const RealMatrix w = slice_weights(p, cfg.n_steps);
  apply_slices(sys, w, 0, cfg.n_steps, cfg.exponential, block);
  return block;
}

ComplexMatrix propagate(const ParameterSet& p, const ControlSystem& sys,
                        const EvolutionConfig& cfg) {
  return evolve(p, sys, cfg, identity(sys.dim()));
}

ComplexMatrix propagate_perturbed(const ParameterSet& p,
                                  const ControlSystem& sys,
                                  const EvolutionConfig& cfg, int j, int k,
                                  double delta) {
  return propagate(p.perturbed(j, k, delta), sys, cfg);
}

ComplexMatrix metric_product(const ParameterSet& a, const ParameterSet& b,
                             const ControlSystem& sys,
                             const EvolutionConfig& cfg) {
  if (a.kind() != b.kind() || a.n_controls() != b.n_controls() ||
      a.n_modes() != b.n_modes()) {
    throw std::invalid_argument("metric_product: parameter shapes differ");
  }
  return propagate(a, sys, cfg).adjoint() * propagate(b, sys, cfg);
}

}  // namespace fqp

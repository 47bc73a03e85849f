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

#include "fqp/ansatz.hpp"
#include "fqp/quantum_core.hpp"

namespace fqp {

// Time-ordered propagation over t in [0, 1].
//
// The interval is cut into n_steps equal slices. Slice m (0-based) samples the
// protocol at its midpoint t_m = (m + 1/2) / n_steps and contributes the exact
// exponential exp(-i H(t_m) dt); slices are multiplied later-on-the-left:
//
//   U = E_{N-1} ... E_1 E_0,   E_m = exp(-i dt sum_j theta_j(t_m) H_j).
//
// Two kernels compute each E_m. Both are exact to rounding; they differ only
// in cost and are cross-checked in the tests.
enum class SliceExponential {
  // Truncated Taylor series of exp(-i H dt) applied directly to the evolved
  // block, with substeps so that |H dt| / s <= 1 and terms summed until they
  // fall below double-precision resolution.
  Taylor,
  // Dense eigendecomposition of H through expm_hermitian.
  Eigendecomposition,
};

struct EvolutionConfig {
  int n_steps = 256;
  SliceExponential exponential = SliceExponential::Taylor;

  /// n_steps = max(256, 8 n_modes).
  static EvolutionConfig for_modes(int n_modes);
};

/// Protocol values at every slice midpoint, shape n_controls x n_steps.
RealMatrix slice_weights(const ParameterSet& p, int n_steps);

/// Applies exp(-i dt sum_j weights[j] H_j) to every column of `block` in
/// place.
void apply_slice(const ControlSystem& sys, const RealVector& weights, double dt,
                 SliceExponential method, ComplexMatrix& block);

/// Applies slices [first, last) of a precomputed weight table to `block`.
void apply_slices(const ControlSystem& sys, const RealMatrix& weights,
                  int first, int last, SliceExponential method,
                  ComplexMatrix& block);

/// U * block for the time-ordered propagator U of `p`.
ComplexMatrix evolve(const ParameterSet& p, const ControlSystem& sys,
                     const EvolutionConfig& cfg, ComplexMatrix block);

/// The full propagator U (evolve applied to the identity).
ComplexMatrix propagate(const ParameterSet& p, const ControlSystem& sys,
                        const EvolutionConfig& cfg);

/// Propagator with coeffs(j, k) shifted by delta on the same slice grid.
ComplexMatrix propagate_perturbed(const ParameterSet& p,
                                  const ControlSystem& sys,
                                  const EvolutionConfig& cfg, int j, int k,
                                  double delta);

/// U_A^dag U_B. Its expectation value in an input state |r> is the overlap
/// <U_A r|U_B r> entering the Fubini-Study metric.
ComplexMatrix metric_product(const ParameterSet& a, const ParameterSet& b,
                             const ControlSystem& sys,
                             const EvolutionConfig& cfg);

}  // namespace fqp

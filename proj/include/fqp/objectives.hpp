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

#include <span>
#include <vector>

#include "fqp/ansatz.hpp"
#include "fqp/quantum_core.hpp"
#include "fqp/rng.hpp"
#include "json.hpp"

namespace fqp {

enum class ObjectiveKind { UnitaryCompilation, EnergyMinimization };

/// What a training run optimizes. For compilation the target is the unitary
/// V and the loss is sampled over `n_input_samples` random product states;
/// for energy minimization the target is the problem Hamiltonian H_p and the
/// loss is <0|U^dag H_p U|0>.
class ObjectiveSpec {
 public:
  static ObjectiveSpec compilation(ComplexMatrix target, int n_input_samples = 8,
                                   bool resample_each_iteration = true);
  static ObjectiveSpec energy(ComplexMatrix problem_hamiltonian);

  ObjectiveKind kind() const { return kind_; }
  const ComplexMatrix& target() const { return target_; }
  int n_qubits() const { return n_qubits_; }
  int n_input_samples() const { return n_input_samples_; }
  bool resample_each_iteration() const { return resample_; }

 private:
  ObjectiveSpec(ObjectiveKind kind, ComplexMatrix target, int n_samples,
                bool resample);

  ObjectiveKind kind_;
  ComplexMatrix target_;
  int n_qubits_;
  int n_input_samples_;
  bool resample_;
};

/// Fourier-transform target with the 1-based index convention
///   V_{k,l} = 2^{-n/2} exp(2 pi i k l / 2^n),  k, l = 1..2^n.
ComplexMatrix qft_matrix(int n_qubits);

/// Product state (x)_i [cos(phi_i/2)|0> + e^{i psi_i} sin(phi_i/2)|1>].
/// Qubit 1 is the leftmost factor.
StateVector product_state(std::span<const double> phi,
                          std::span<const double> psi);

/// Random unentangled input: for i = 1..n (in order) draws phi_i then psi_i,
/// both uniform in [0, 2 pi).
StateVector random_input_state(int n_qubits, Rng& rng);
std::vector<StateVector> random_input_states(int n_qubits, int count, Rng& rng);

/// 1 - mean_r |<r|U^dag V|r>|^2.
double unitary_loss(const ComplexMatrix& u, const ComplexMatrix& v,
                    std::span<const StateVector> states);

/// Same quantity from precomputed columns U|r> and V|r>.
double unitary_loss_from_images(const ComplexMatrix& u_states,
                                const ComplexMatrix& v_states);

/// epsilon = 1 - |Tr(U^dag V) / dim|^2.
double implementation_error(const ComplexMatrix& u, const ComplexMatrix& v);

/// <0|U^dag H_p U|0>.
double energy_loss(const ComplexMatrix& u, const ComplexMatrix& problem);

/// <psi|H|psi> for a column psi; throws std::domain_error if the imaginary
/// part exceeds 1e-10.
double expectation(const ComplexVector& psi, const ComplexMatrix& h);

/// Z_1 Z_2 (x) I on the remaining qubits; n_qubits >= 2.
ComplexMatrix fixed_problem_hamiltonian(int n_qubits);

/// H_p = sum_j hz_j Z_j + sum_j hx_j X_j + sum_{j<n} J_j Z_j Z_{j+1}.
struct ProblemHamiltonian {
  int n_qubits = 0;
  std::vector<double> hz;
  std::vector<double> hx;
  std::vector<double> coupling;

  ComplexMatrix matrix() const;
};

/// Coefficients uniform in (-1, 1), drawn hz (j = 1..n), then hx, then J.
ProblemHamiltonian random_problem_hamiltonian(int n_qubits, Rng& rng);

/// {"n_q", "hz", "hx", "J"}
void to_json(nlohmann::json& j, const ProblemHamiltonian& h);
void from_json(const nlohmann::json& j, ProblemHamiltonian& h);

/// Lowest eigenvalue from a dense eigendecomposition.
double ground_energy(const ComplexMatrix& problem);

/// A = integral_0^1 |theta(t)| dt by the midpoint rule on n_quad points;
/// n_quad >= 64.
double effective_action(const ParameterSet& p, int n_quad = 1024);

}  // namespace fqp

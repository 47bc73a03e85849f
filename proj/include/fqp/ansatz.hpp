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

#include <string>
#include <string_view>
#include <vector>

#include "fqp/quantum_core.hpp"
#include "fqp/rng.hpp"
#include "json.hpp"

namespace fqp {

// Control protocol parametrizations over t in [0, 1].
//
//   Fourier:  theta_j(t) = sum_{k=1}^{n_f} theta_{j,k} sin(pi k t)
//   StepWise: theta_j(t) = theta_{j,k}  for k/n_f <= t < (k+1)/n_f
//
// Coefficient matrices are indexed (control j, column k) with both indices
// 0-based in code; column k of a Fourier set is the mode with frequency k+1.
enum class AnsatzKind { Fourier, StepWise };

std::string_view to_string(AnsatzKind kind);
/// Accepts "fourier" or "stepwise"; throws std::invalid_argument otherwise.
AnsatzKind parse_ansatz_kind(std::string_view name);

/// Number of controls of the transverse Ising system: x and y fields on each
/// qubit plus nearest-neighbour zz couplings.
constexpr int ising_control_count(int n_qubits) { return 3 * n_qubits - 1; }

class ParameterSet {
 public:
  /// All-zero coefficients.
  ParameterSet(AnsatzKind kind, int n_qubits, int n_modes);
  /// Takes ownership of `coeffs`; shape must be (3 n_q - 1) x n_f and every
  /// entry finite.
  ParameterSet(AnsatzKind kind, int n_qubits, RealMatrix coeffs);

  AnsatzKind kind() const { return kind_; }
  int n_qubits() const { return n_qubits_; }
  int n_controls() const { return static_cast<int>(coeffs_.rows()); }
  int n_modes() const { return static_cast<int>(coeffs_.cols()); }
  int size() const { return static_cast<int>(coeffs_.size()); }
  const RealMatrix& coeffs() const { return coeffs_; }
  double operator()(int j, int k) const { return coeffs_(j, k); }

  /// Copy with coeffs(j, k) += delta.
  ParameterSet perturbed(int j, int k, double delta) const;
  /// Copy with coeffs += step (same shape).
  ParameterSet shifted(const RealMatrix& step) const;
  ParameterSet scaled(double factor) const;

  /// Same kind, shape and bit-identical coefficients.
  friend bool operator==(const ParameterSet& a, const ParameterSet& b);

 private:
  AnsatzKind kind_;
  int n_qubits_;
  RealMatrix coeffs_;
};

/// JSON document {kind, n_q, n_f, coeffs} with coeffs flattened row-major
/// (control-major).
void to_json(nlohmann::json& j, const ParameterSet& p);
ParameterSet parameter_set_from_json(const nlohmann::json& j);

/// Ordered Hermitian generators for n_q qubits:
///   [X_1, Y_1, X_2, Y_2, ..., X_n, Y_n, Z_1 Z_2, ..., Z_{n-1} Z_n]
/// Open boundary, no z fields.
class ControlSystem {
 public:
  int n_qubits() const { return n_qubits_; }
  int dim() const { return 1 << n_qubits_; }
  int n_controls() const { return static_cast<int>(generators_.size()); }
  const std::vector<ComplexMatrix>& generators() const { return generators_; }
  const ComplexMatrix& generator(int j) const { return generators_.at(j); }
  const std::vector<std::string>& labels() const { return labels_; }

  /// Upper bounds on the spectral norm of each generator.
  const std::vector<double>& norm_bounds() const { return norm_bounds_; }

  /// y = (sum_j weights[j] H_j) x without forming the dense sum. Every
  /// generator is a Pauli string, i.e. one nonzero per row, stored as a
  /// (column, value) pair per row.
  void apply_hamiltonian(const RealVector& weights, const ComplexMatrix& x,
                         ComplexMatrix& y) const;

  /// Sum_j weights[j] * H_j as a dense matrix.
  ComplexMatrix hamiltonian(const RealVector& weights) const;

  /// Generators sharing a column pattern (X and Y on one qubit, all
  /// diagonal terms) merge into one monomial of the weighted sum.
  int n_patterns() const { return static_cast<int>(patterns_.size()); }

  /// Per-pattern values of sum_j weights[j] H_j, pattern-major, length
  /// n_patterns() * dim(). Returns the max absolute row sum, an upper bound
  /// on the spectral norm.
  double combine(const RealVector& weights, std::vector<Complex>& values) const;

  /// y = H x for `cols` contiguous columns of length dim(), with H given by
  /// combine(). x and y must not alias.
  void apply_combined(const std::vector<Complex>& values, const Complex* x,
                      Complex* y, Eigen::Index cols) const;

 private:
  friend ControlSystem build_ising_system(int n_qubits);
  ControlSystem(int n_qubits, std::vector<ComplexMatrix> generators,
                std::vector<std::string> labels);

  int n_qubits_;
  std::vector<ComplexMatrix> generators_;
  std::vector<std::string> labels_;
  struct RowMonomial {
    std::vector<Eigen::Index> column;
    std::vector<Complex> value;
  };
  std::vector<RowMonomial> monomials_;
  struct Pattern {
    std::vector<Eigen::Index> column;
    std::vector<int> members;
  };
  std::vector<Pattern> patterns_;
  std::vector<double> norm_bounds_;
};

/// Transverse Ising control system; 1 <= n_qubits <= 8.
ControlSystem build_ising_system(int n_qubits);

/// Basis function values b_k(t) for k = 0..n_modes-1, so that
/// theta(t) = coeffs * b(t).
RealVector basis_values(AnsatzKind kind, int n_modes, double t);

/// theta_j(t) for every control. Throws std::out_of_range for t outside
/// [0, 1]. StepWise at exactly t = 1 returns the last step.
RealVector evaluate_protocol(const ParameterSet& p, double t);

/// Fourier: theta_{j,k} ~ U(-pi/k, pi/k) with k the mode number.
/// StepWise: theta_{j,k} ~ U(-pi, pi).
/// Draw order: control-major (j outer, k inner).
ParameterSet init_parameters(AnsatzKind kind, int n_qubits, int n_modes,
                             Rng& rng);

/// Uniform point in the solid `dim`-ball of the given radius: a normalized
/// vector of `dim` normal() draws times radius * u^(1/dim), u = uniform().
/// radius == 0 returns the zero vector without consuming draws.
RealVector sample_ball(double radius, int dim, Rng& rng);

/// Column k is an independent sample_ball draw of dimension n_controls with
/// radius theta_max (StepWise) or theta_max / (k+1) (Fourier). Columns are
/// drawn in order k = 0..n_f-1.
ParameterSet sample_parameter_set(AnsatzKind kind, int n_qubits, int n_modes,
                                  double theta_max, Rng& rng);

}  // namespace fqp

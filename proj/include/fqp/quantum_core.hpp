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

#include <complex>
#include <cstddef>

#include <Eigen/Dense>

namespace fqp {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;

// Largest Hilbert space handled by the dense kernels (8 qubits).
inline constexpr int kMaxQubits = 8;

inline constexpr double kStateNormTolerance = 1e-10;
inline constexpr double kHermitianTolerance = 1e-10;

enum class PauliAxis { X, Y, Z };

/// Normalized pure state. Construction rejects vectors whose Euclidean norm
/// deviates from one by more than kStateNormTolerance; use normalized() to
/// build from an arbitrary nonzero vector.
class StateVector {
 public:
  explicit StateVector(ComplexVector amplitudes);

  static StateVector normalized(const ComplexVector& v);
  /// Computational basis state |index> of a register of n_qubits.
  static StateVector basis(int n_qubits, std::size_t index);

  int dim() const { return static_cast<int>(amplitudes_.size()); }
  const ComplexVector& amplitudes() const { return amplitudes_; }
  Complex operator[](Eigen::Index i) const { return amplitudes_[i]; }

  /// Returns U|this>. U must be unitary.
  StateVector evolved(const ComplexMatrix& unitary) const;

 private:
  ComplexVector amplitudes_;
};

ComplexMatrix identity(int dim);
ComplexMatrix pauli(PauliAxis axis);

/// Kronecker product; the left factor is the most significant tensor slot.
ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

/// I (x) ... (x) sigma_axis (x) ... (x) I with sigma on `qubit` (1-based,
/// qubit 1 leftmost).
ComplexMatrix pauli_on_qubit(PauliAxis axis, int qubit, int n_qubits);

/// max_{ij} |a_ij|
double max_abs(const ComplexMatrix& a);
double hermiticity_defect(const ComplexMatrix& h);
bool is_hermitian(const ComplexMatrix& h, double tol = kHermitianTolerance);
/// max_{ij} |(U^dag U - I)_ij|
double unitarity_defect(const ComplexMatrix& u);

/// exp(-i H dt) for Hermitian H via eigendecomposition. Throws
/// std::invalid_argument when H is not Hermitian within kHermitianTolerance.
ComplexMatrix expm_hermitian(const ComplexMatrix& h, double dt);

/// <a|b>, conjugate-linear in a.
Complex overlap(const StateVector& a, const StateVector& b);

/// Smallest eigenvalue of a Hermitian matrix.
double min_eigenvalue(const ComplexMatrix& h);

}  // namespace fqp

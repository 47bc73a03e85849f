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

#include "fqp/quantum_core.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include <Eigen/Eigenvalues>

namespace fqp {

StateVector::StateVector(ComplexVector amplitudes)
    : amplitudes_(std::move(amplitudes)) {
  if (amplitudes_.size() == 0) {
    throw std::invalid_argument("StateVector: empty amplitude vector");
  }
  const double norm = amplitudes_.norm();
  if (!std::isfinite(norm) || std::abs(norm - 1.0) > kStateNormTolerance) {
    throw std::invalid_argument("StateVector: norm " + std::to_string(norm) +
                                " is not 1");
  }
}

StateVector StateVector::normalized(const ComplexVector& v) {
  const double norm = v.norm();
  if (!(norm > 0.0) || !std::isfinite(norm)) {
    throw std::invalid_argument("StateVector: cannot normalize zero vector");
  }
  return StateVector(v / norm);
}

StateVector StateVector::basis(int n_qubits, std::size_t index) {
  if (n_qubits < 1 || n_qubits > kMaxQubits) {
    throw std::out_of_range("StateVector::basis: qubit count out of range");
  }
  const std::size_t dim = std::size_t{1} << n_qubits;
  if (index >= dim) {
    throw std::out_of_range("StateVector::basis: index out of range");
  }
  ComplexVector v = ComplexVector::Zero(static_cast<Eigen::Index>(dim));
  v[static_cast<Eigen::Index>(index)] = 1.0;
  return StateVector(std::move(v));
}

StateVector StateVector::evolved(const ComplexMatrix& unitary) const {
  if (unitary.cols() != amplitudes_.size() ||
      unitary.rows() != amplitudes_.size()) {
    throw std::invalid_argument("StateVector::evolved: dimension mismatch");
  }
  return StateVector(unitary * amplitudes_);
}

ComplexMatrix identity(int dim) { return ComplexMatrix::Identity(dim, dim); }

ComplexMatrix pauli(PauliAxis axis) {
  const Complex i{0.0, 1.0};
  ComplexMatrix s(2, 2);
  switch (axis) {
    case PauliAxis::X:
      s << 0.0, 1.0, 1.0, 0.0;
      break;
    case PauliAxis::Y:
      s << 0.0, -i, i, 0.0;
      break;
    case PauliAxis::Z:
      s << 1.0, 0.0, 0.0, -1.0;
      break;
  }
  return s;
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.rows() != a.cols() || b.rows() != b.cols()) {
    throw std::invalid_argument("kron: operands must be square");
  }
  const Eigen::Index n = b.rows();
  ComplexMatrix out(a.rows() * n, a.cols() * n);
  for (Eigen::Index r = 0; r < a.rows(); ++r) {
    for (Eigen::Index c = 0; c < a.cols(); ++c) {
      out.block(r * n, c * n, n, n) = a(r, c) * b;
    }
  }
  return out;
}

ComplexMatrix pauli_on_qubit(PauliAxis axis, int qubit, int n_qubits) {
  if (n_qubits < 1 || n_qubits > kMaxQubits) {
    throw std::out_of_range("pauli_on_qubit: qubit count out of range");
  }
  if (qubit < 1 || qubit > n_qubits) {
    throw std::out_of_range("pauli_on_qubit: qubit index " +
                            std::to_string(qubit) + " not in [1, " +
                            std::to_string(n_qubits) + "]");
  }
  ComplexMatrix out = ComplexMatrix::Identity(1, 1);
  for (int q = 1; q <= n_qubits; ++q) {
    out = kron(out, q == qubit ? pauli(axis) : identity(2));
  }
  return out;
}

double max_abs(const ComplexMatrix& a) {
  return a.size() == 0 ? 0.0 : a.cwiseAbs().maxCoeff();
}

double hermiticity_defect(const ComplexMatrix& h) {
  if (h.rows() != h.cols()) {
    return std::numeric_limits<double>::infinity();
  }
  return max_abs(h - h.adjoint());
}

bool is_hermitian(const ComplexMatrix& h, double tol) {
  return hermiticity_defect(h) <= tol;
}

double unitarity_defect(const ComplexMatrix& u) {
  if (u.rows() != u.cols()) {
    return std::numeric_limits<double>::infinity();
  }
  return max_abs(u.adjoint() * u - identity(static_cast<int>(u.rows())));
}

ComplexMatrix expm_hermitian(const ComplexMatrix& h, double dt) {
  if (!is_hermitian(h)) {
    throw std::invalid_argument("expm_hermitian: matrix is not Hermitian");
  }
  if (dt == 0.0) {
    return identity(static_cast<int>(h.rows()));
  }
  // Symmetrize so the solver sees an exactly self-adjoint input.
  const ComplexMatrix hs = 0.5 * (h + h.adjoint());
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> eig(hs);
  if (eig.info() != Eigen::Success) {
    throw std::runtime_error("expm_hermitian: eigendecomposition failed");
  }
  const RealVector& w = eig.eigenvalues();
  ComplexVector phases(w.size());
  for (Eigen::Index k = 0; k < w.size(); ++k) {
    phases[k] = std::polar(1.0, -w[k] * dt);
  }
  const ComplexMatrix& v = eig.eigenvectors();
  return v * phases.asDiagonal() * v.adjoint();
}

Complex overlap(const StateVector& a, const StateVector& b) {
  if (a.dim() != b.dim()) {
    throw std::invalid_argument("overlap: dimension mismatch");
  }
  return a.amplitudes().dot(b.amplitudes());
}

double min_eigenvalue(const ComplexMatrix& h) {
  if (!is_hermitian(h)) {
    throw std::invalid_argument("min_eigenvalue: matrix is not Hermitian");
  }
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> eig(0.5 * (h + h.adjoint()),
                                                   Eigen::EigenvaluesOnly);
  return eig.eigenvalues().minCoeff();
}

}  // namespace fqp

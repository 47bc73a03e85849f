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

#include <gtest/gtest.h>

#include <numbers>
#include <random>

#include "oracles.hpp"

namespace fqp {
namespace {

using oracle::C;

ComplexMatrix random_hermitian(int dim, std::mt19937_64& gen, double scale) {
  std::normal_distribution<double> n(0.0, scale);
  ComplexMatrix a(dim, dim);
  for (int r = 0; r < dim; ++r) {
    for (int c = 0; c < dim; ++c) {
      a(r, c) = C(n(gen), n(gen));
    }
  }
  return 0.5 * (a + a.adjoint());
}

StateVector random_state(int dim, std::mt19937_64& gen) {
  std::normal_distribution<double> n;
  ComplexVector v(dim);
  for (int i = 0; i < dim; ++i) {
    v[i] = C(n(gen), n(gen));
  }
  return StateVector::normalized(v);
}

TEST(Kron, IdentityTimesIdentity) {
  EXPECT_EQ(kron(identity(2), identity(2)), identity(4));
}

TEST(Kron, ZZIsDiagonal) {
  ComplexMatrix expected = ComplexMatrix::Zero(4, 4);
  expected.diagonal() << 1, -1, -1, 1;
  EXPECT_EQ(kron(pauli(PauliAxis::Z), pauli(PauliAxis::Z)), expected);
}

TEST(Kron, XOnFirstQubitFlipsLeftmostBit) {
  const ComplexVector out =
      kron(pauli(PauliAxis::X), identity(2)) * StateVector::basis(2, 0).amplitudes();
  EXPECT_EQ(out, StateVector::basis(2, 2).amplitudes());  // |10>
}

TEST(Kron, MatchesEigenKroneckerProduct) {
  std::mt19937_64 gen(7);
  const ComplexMatrix a = random_hermitian(2, gen, 1.0);
  const ComplexMatrix b = random_hermitian(4, gen, 1.0);
  EXPECT_LT(oracle::max_abs(kron(a, b) - oracle::kron(a, b)), 1e-15);
}

TEST(Kron, AssociativeExactly) {
  const ComplexMatrix x = pauli(PauliAxis::X);
  const ComplexMatrix y = pauli(PauliAxis::Y);
  const ComplexMatrix z = pauli(PauliAxis::Z);
  EXPECT_EQ(kron(kron(x, y), z), kron(x, kron(y, z)));
}

TEST(Kron, RejectsNonSquare) {
  EXPECT_THROW(kron(ComplexMatrix::Zero(2, 3), identity(2)),
               std::invalid_argument);
}

TEST(PauliOnQubit, SingleQubitZ) {
  EXPECT_EQ(pauli_on_qubit(PauliAxis::Z, 1, 1), oracle::sz());
}

TEST(PauliOnQubit, XOnSecondOfTwo) {
  EXPECT_EQ(pauli_on_qubit(PauliAxis::X, 2, 2),
            oracle::kron(oracle::id(2), oracle::sx()));
}

TEST(PauliOnQubit, CommutatorXYIsTwoIZ) {
  const ComplexMatrix x = pauli_on_qubit(PauliAxis::X, 1, 2);
  const ComplexMatrix y = pauli_on_qubit(PauliAxis::Y, 1, 2);
  const ComplexMatrix z = pauli_on_qubit(PauliAxis::Z, 1, 2);
  EXPECT_LT(oracle::max_abs(x * y - y * x - C(0, 2) * z), 1e-15);
}

TEST(PauliOnQubit, HermitianAndInvolutoryEverywhere) {
  for (int n = 1; n <= 4; ++n) {
    for (int q = 1; q <= n; ++q) {
      for (PauliAxis a : {PauliAxis::X, PauliAxis::Y, PauliAxis::Z}) {
        const ComplexMatrix p = pauli_on_qubit(a, q, n);
        EXPECT_LT(hermiticity_defect(p), 1e-12);
        EXPECT_EQ(p * p, identity(1 << n));
      }
    }
  }
}

TEST(PauliOnQubit, IndexOutOfRange) {
  EXPECT_THROW(pauli_on_qubit(PauliAxis::X, 0, 2), std::out_of_range);
  EXPECT_THROW(pauli_on_qubit(PauliAxis::X, 3, 2), std::out_of_range);
  EXPECT_THROW(pauli_on_qubit(PauliAxis::X, 1, 9), std::out_of_range);
}

TEST(ExpmHermitian, ZeroTimeIsIdentity) {
  std::mt19937_64 gen(1);
  EXPECT_LT(oracle::max_abs(expm_hermitian(random_hermitian(4, gen, 1.0), 0.0) -
                            identity(4)),
            1e-15);
}

TEST(ExpmHermitian, HalfPiXRotation) {
  const ComplexMatrix u = expm_hermitian(pauli(PauliAxis::X), std::numbers::pi / 2);
  EXPECT_LT(oracle::max_abs(u - C(0, -1) * oracle::sx()), 1e-15);
}

TEST(ExpmHermitian, RandomEightDimUnitaryAndMatchesPade) {
  std::mt19937_64 gen(3);
  for (int trial = 0; trial < 20; ++trial) {
    const ComplexMatrix h = random_hermitian(8, gen, 1.0);
    const ComplexMatrix u = expm_hermitian(h, 0.37);
    EXPECT_LT(unitarity_defect(u), 1e-10);
    EXPECT_LT(oracle::max_abs(u - oracle::expm(h, 0.37)), 1e-12);
  }
}

TEST(ExpmHermitian, UnitaryAtLargeSpectralRadiusTimesTime) {
  std::mt19937_64 gen(4);
  ComplexMatrix h = random_hermitian(16, gen, 1.0);
  const double radius = h.selfadjointView<Eigen::Lower>()
                            .eigenvalues()
                            .cwiseAbs()
                            .maxCoeff();
  EXPECT_LT(unitarity_defect(expm_hermitian(h, 1e3 / radius)), 1e-10);
}

TEST(ExpmHermitian, RejectsNonHermitian) {
  ComplexMatrix h = pauli(PauliAxis::X);
  h(0, 1) = C(1.0, 1e-6);
  EXPECT_THROW(expm_hermitian(h, 1.0), std::invalid_argument);
}

TEST(Overlap, SelfOverlapIsOne) {
  std::mt19937_64 gen(5);
  const StateVector s = random_state(8, gen);
  EXPECT_NEAR(std::abs(overlap(s, s) - C(1.0, 0.0)), 0.0, 1e-14);
}

TEST(Overlap, OrthogonalBasisStates) {
  EXPECT_EQ(overlap(StateVector::basis(1, 0), StateVector::basis(1, 1)),
            C(0.0, 0.0));
}

TEST(Overlap, ConjugatesFirstArgument) {
  const StateVector a(ComplexVector::Unit(2, 0) * C(0.0, 1.0));
  const StateVector b = StateVector::basis(1, 0);
  EXPECT_EQ(overlap(a, b), C(0.0, -1.0));
}

TEST(Overlap, CauchySchwarzOnTwoDimDecomposition) {
  std::mt19937_64 gen(6);
  for (int trial = 0; trial < 100; ++trial) {
    const StateVector a = random_state(2, gen);
    const StateVector b = random_state(2, gen);
    // b_perp spans the orthogonal complement of b.
    ComplexVector perp(2);
    perp << -std::conj(b[1]), std::conj(b[0]);
    const StateVector bp(perp);
    const double total =
        std::norm(overlap(a, b)) + std::norm(overlap(a, bp));
    EXPECT_LE(total, 1.0 + 1e-12);
  }
}

TEST(Overlap, DimensionMismatch) {
  EXPECT_THROW(overlap(StateVector::basis(1, 0), StateVector::basis(2, 0)),
               std::invalid_argument);
}

TEST(StateVector, RejectsUnnormalized) {
  EXPECT_THROW(StateVector(ComplexVector::Ones(2)), std::invalid_argument);
  EXPECT_THROW(StateVector::normalized(ComplexVector::Zero(2)),
               std::invalid_argument);
}

TEST(StateVector, NormPreservedUnderUnitaries) {
  std::mt19937_64 gen(8);
  StateVector s = random_state(8, gen);
  for (int i = 0; i < 50; ++i) {
    s = s.evolved(expm_hermitian(random_hermitian(8, gen, 2.0), 1.0));
  }
  EXPECT_NEAR(s.amplitudes().norm(), 1.0, 1e-10);
}

TEST(MinEigenvalue, MatchesDiagonal) {
  ComplexMatrix d = ComplexMatrix::Zero(3, 3);
  d.diagonal() << 2.0, -3.5, 1.0;
  EXPECT_DOUBLE_EQ(min_eigenvalue(d), -3.5);
}

}  // namespace
}  // namespace fqp

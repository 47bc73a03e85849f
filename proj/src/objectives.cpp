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

#include "fqp/objectives.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace fqp {

namespace {

int qubits_for_dim(Eigen::Index dim) {
  int n = 0;
  while ((Eigen::Index{1} << n) < dim) {
    ++n;
  }
  if ((Eigen::Index{1} << n) != dim || n < 1 || n > kMaxQubits) {
    throw std::invalid_argument("dimension " + std::to_string(dim) +
                                " is not 2^n for 1 <= n <= 8");
  }
  return n;
}

void check_same_shape(const ComplexMatrix& a, const ComplexMatrix& b,
                      const char* where) {
  if (a.rows() != b.rows() || a.cols() != b.cols() || a.rows() != a.cols()) {
    throw std::invalid_argument(std::string(where) + ": dimension mismatch");
  }
}

}  // namespace

ObjectiveSpec::ObjectiveSpec(ObjectiveKind kind, ComplexMatrix target,
                             int n_samples, bool resample)
    : kind_(kind),
      target_(std::move(target)),
      n_qubits_(qubits_for_dim(target_.rows())),
      n_input_samples_(n_samples),
      resample_(resample) {}

ObjectiveSpec ObjectiveSpec::compilation(ComplexMatrix target,
                                         int n_input_samples,
                                         bool resample_each_iteration) {
  if (target.rows() != target.cols() || unitarity_defect(target) > 1e-10) {
    throw std::invalid_argument("compilation target is not unitary");
  }
  if (n_input_samples < 1) {
    throw std::invalid_argument("compilation needs at least one input state");
  }
  return ObjectiveSpec(ObjectiveKind::UnitaryCompilation, std::move(target),
                       n_input_samples, resample_each_iteration);
}

ObjectiveSpec ObjectiveSpec::energy(ComplexMatrix problem_hamiltonian) {
  if (!is_hermitian(problem_hamiltonian)) {
    throw std::invalid_argument("problem Hamiltonian is not Hermitian");
  }
  return ObjectiveSpec(ObjectiveKind::EnergyMinimization,
                       std::move(problem_hamiltonian), 1, false);
}

ComplexMatrix qft_matrix(int n_qubits) {
  if (n_qubits < 1 || n_qubits > kMaxQubits) {
    throw std::out_of_range("qft_matrix: qubit count out of range");
  }
  const int dim = 1 << n_qubits;
  const double scale = std::pow(2.0, -0.5 * n_qubits);
  ComplexMatrix v(dim, dim);
  for (int k = 1; k <= dim; ++k) {
    for (int l = 1; l <= dim; ++l) {
      // Reduce k*l mod 2^n before scaling so the phase stays exact.
      const long long kl = (static_cast<long long>(k) * l) % dim;
      const double phase = 2.0 * std::numbers::pi * kl / dim;
      v(k - 1, l - 1) = std::polar(scale, phase);
    }
  }
  return v;
}

StateVector product_state(std::span<const double> phi,
                          std::span<const double> psi) {
  if (phi.size() != psi.size() || phi.empty() ||
      phi.size() > static_cast<std::size_t>(kMaxQubits)) {
    throw std::invalid_argument("product_state: bad angle lists");
  }
  ComplexVector state = ComplexVector::Ones(1);
  for (std::size_t i = 0; i < phi.size(); ++i) {
    ComplexVector q(2);
    q << std::cos(phi[i] / 2.0), std::polar(std::sin(phi[i] / 2.0), psi[i]);
    ComplexVector next(state.size() * 2);
    for (Eigen::Index a = 0; a < state.size(); ++a) {
      next[2 * a] = state[a] * q[0];
      next[2 * a + 1] = state[a] * q[1];
    }
    state.swap(next);
  }
  return StateVector::normalized(state);
}

StateVector random_input_state(int n_qubits, Rng& rng) {
  if (n_qubits < 1 || n_qubits > kMaxQubits) {
    throw std::out_of_range("random_input_state: qubit count out of range");
  }
  std::vector<double> phi(static_cast<std::size_t>(n_qubits));
  std::vector<double> psi(static_cast<std::size_t>(n_qubits));
  for (int i = 0; i < n_qubits; ++i) {
    phi[static_cast<std::size_t>(i)] = rng.uniform(0.0, 2.0 * std::numbers::pi);
    psi[static_cast<std::size_t>(i)] = rng.uniform(0.0, 2.0 * std::numbers::pi);
  }
  return product_state(phi, psi);
}

std::vector<StateVector> random_input_states(int n_qubits, int count,
                                             Rng& rng) {
  std::vector<StateVector> out;
  out.reserve(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) {
    out.push_back(random_input_state(n_qubits, rng));
  }
  return out;
}

double unitary_loss(const ComplexMatrix& u, const ComplexMatrix& v,
                    std::span<const StateVector> states) {
  check_same_shape(u, v, "unitary_loss");
  if (states.empty()) {
    throw std::invalid_argument("unitary_loss: empty input-state set");
  }
  ComplexMatrix r(u.rows(), static_cast<Eigen::Index>(states.size()));
  for (std::size_t i = 0; i < states.size(); ++i) {
    if (states[i].dim() != u.rows()) {
      throw std::invalid_argument("unitary_loss: state dimension mismatch");
    }
    r.col(static_cast<Eigen::Index>(i)) = states[i].amplitudes();
  }
  return unitary_loss_from_images(u * r, v * r);
}

double unitary_loss_from_images(const ComplexMatrix& u_states,
                                const ComplexMatrix& v_states) {
  if (u_states.rows() != v_states.rows() ||
      u_states.cols() != v_states.cols() || u_states.cols() == 0) {
    throw std::invalid_argument("unitary_loss: image shape mismatch");
  }
  double fidelity = 0.0;
  for (Eigen::Index c = 0; c < u_states.cols(); ++c) {
    fidelity += std::norm(u_states.col(c).dot(v_states.col(c)));
  }
  return 1.0 - fidelity / static_cast<double>(u_states.cols());
}

double implementation_error(const ComplexMatrix& u, const ComplexMatrix& v) {
  check_same_shape(u, v, "implementation_error");
  const Complex tr = (u.adjoint() * v).trace() / static_cast<double>(u.rows());
  return 1.0 - std::norm(tr);
}

double expectation(const ComplexVector& psi, const ComplexMatrix& h) {
  const Complex e = psi.dot(h * psi);
  if (std::abs(e.imag()) > 1e-10) {
    throw std::domain_error("expectation value has imaginary part " +
                            std::to_string(e.imag()));
  }
  return e.real();
}

double energy_loss(const ComplexMatrix& u, const ComplexMatrix& problem) {
  check_same_shape(u, problem, "energy_loss");
  if (!is_hermitian(problem)) {
    throw std::invalid_argument("energy_loss: problem Hamiltonian is not "
                                "Hermitian");
  }
  return expectation(u.col(0), problem);
}

ComplexMatrix fixed_problem_hamiltonian(int n_qubits) {
  if (n_qubits < 2 || n_qubits > kMaxQubits) {
    throw std::out_of_range("fixed_problem_hamiltonian: needs 2..8 qubits");
  }
  return pauli_on_qubit(PauliAxis::Z, 1, n_qubits) *
         pauli_on_qubit(PauliAxis::Z, 2, n_qubits);
}

ComplexMatrix ProblemHamiltonian::matrix() const {
  if (n_qubits < 1 || n_qubits > kMaxQubits ||
      hz.size() != static_cast<std::size_t>(n_qubits) ||
      hx.size() != static_cast<std::size_t>(n_qubits) ||
      coupling.size() != static_cast<std::size_t>(n_qubits - 1)) {
    throw std::invalid_argument("ProblemHamiltonian: inconsistent sizes");
  }
  const int dim = 1 << n_qubits;
  ComplexMatrix h = ComplexMatrix::Zero(dim, dim);
  for (int j = 0; j < n_qubits; ++j) {
    const auto ju = static_cast<std::size_t>(j);
    h += hz[ju] * pauli_on_qubit(PauliAxis::Z, j + 1, n_qubits);
    h += hx[ju] * pauli_on_qubit(PauliAxis::X, j + 1, n_qubits);
  }
  for (int j = 0; j + 1 < n_qubits; ++j) {
    h += coupling[static_cast<std::size_t>(j)] *
         pauli_on_qubit(PauliAxis::Z, j + 1, n_qubits) *
         pauli_on_qubit(PauliAxis::Z, j + 2, n_qubits);
  }
  return h;
}

ProblemHamiltonian random_problem_hamiltonian(int n_qubits, Rng& rng) {
  if (n_qubits < 1 || n_qubits > kMaxQubits) {
    throw std::out_of_range("random_problem_hamiltonian: qubit count");
  }
  ProblemHamiltonian h;
  h.n_qubits = n_qubits;
  for (int j = 0; j < n_qubits; ++j) {
    h.hz.push_back(rng.uniform(-1.0, 1.0));
  }
  for (int j = 0; j < n_qubits; ++j) {
    h.hx.push_back(rng.uniform(-1.0, 1.0));
  }
  for (int j = 0; j + 1 < n_qubits; ++j) {
    h.coupling.push_back(rng.uniform(-1.0, 1.0));
  }
  return h;
}

void to_json(nlohmann::json& j, const ProblemHamiltonian& h) {
  j = nlohmann::json{
      {"n_q", h.n_qubits}, {"hz", h.hz}, {"hx", h.hx}, {"J", h.coupling}};
}

void from_json(const nlohmann::json& j, ProblemHamiltonian& h) {
  j.at("n_q").get_to(h.n_qubits);
  j.at("hz").get_to(h.hz);
  j.at("hx").get_to(h.hx);
  j.at("J").get_to(h.coupling);
}

double ground_energy(const ComplexMatrix& problem) {
  return min_eigenvalue(problem);
}

double effective_action(const ParameterSet& p, int n_quad) {
  if (n_quad < 64) {
    throw std::invalid_argument("effective_action: n_quad must be >= 64");
  }
  double sum = 0.0;
  for (int m = 0; m < n_quad; ++m) {
    const double t = (m + 0.5) / n_quad;
    sum += evaluate_protocol(p, t).norm();
  }
  return sum / n_quad;
}

}  // namespace fqp

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

#include "fqp/ansatz.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace fqp {

namespace {

void check_qubits(int n_qubits, const char* where) {
  if (n_qubits < 1 || n_qubits > kMaxQubits) {
    throw std::out_of_range(std::string(where) + ": qubit count " +
                            std::to_string(n_qubits) + " not in [1, 8]");
  }
}

void check_modes(int n_modes, const char* where) {
  if (n_modes < 1) {
    throw std::invalid_argument(std::string(where) +
                                ": mode/step count must be positive");
  }
}

}  // namespace

std::string_view to_string(AnsatzKind kind) {
  switch (kind) {
    case AnsatzKind::Fourier:
      return "fourier";
    case AnsatzKind::StepWise:
      return "stepwise";
  }
  return "unknown";
}

AnsatzKind parse_ansatz_kind(std::string_view name) {
  if (name == "fourier") {
    return AnsatzKind::Fourier;
  }
  if (name == "stepwise") {
    return AnsatzKind::StepWise;
  }
  throw std::invalid_argument("unknown ansatz '" + std::string(name) +
                              "' (expected fourier or stepwise)");
}

ParameterSet::ParameterSet(AnsatzKind kind, int n_qubits, int n_modes)
    : kind_(kind), n_qubits_(n_qubits) {
  check_qubits(n_qubits, "ParameterSet");
  check_modes(n_modes, "ParameterSet");
  coeffs_ = RealMatrix::Zero(ising_control_count(n_qubits), n_modes);
}

ParameterSet::ParameterSet(AnsatzKind kind, int n_qubits, RealMatrix coeffs)
    : kind_(kind), n_qubits_(n_qubits), coeffs_(std::move(coeffs)) {
  check_qubits(n_qubits, "ParameterSet");
  check_modes(static_cast<int>(coeffs_.cols()), "ParameterSet");
  if (coeffs_.rows() != ising_control_count(n_qubits)) {
    throw std::invalid_argument("ParameterSet: expected " +
                                std::to_string(ising_control_count(n_qubits)) +
                                " control rows, got " +
                                std::to_string(coeffs_.rows()));
  }
  if (!coeffs_.allFinite()) {
    throw std::invalid_argument("ParameterSet: non-finite coefficient");
  }
}

ParameterSet ParameterSet::perturbed(int j, int k, double delta) const {
  if (j < 0 || j >= n_controls() || k < 0 || k >= n_modes()) {
    throw std::out_of_range("ParameterSet::perturbed: index out of range");
  }
  RealMatrix c = coeffs_;
  c(j, k) += delta;
  return ParameterSet(kind_, n_qubits_, std::move(c));
}

ParameterSet ParameterSet::shifted(const RealMatrix& step) const {
  if (step.rows() != coeffs_.rows() || step.cols() != coeffs_.cols()) {
    throw std::invalid_argument("ParameterSet::shifted: shape mismatch");
  }
  return ParameterSet(kind_, n_qubits_, coeffs_ + step);
}

ParameterSet ParameterSet::scaled(double factor) const {
  return ParameterSet(kind_, n_qubits_, coeffs_ * factor);
}

bool operator==(const ParameterSet& a, const ParameterSet& b) {
  return a.kind_ == b.kind_ && a.n_qubits_ == b.n_qubits_ &&
         a.coeffs_.rows() == b.coeffs_.rows() &&
         a.coeffs_.cols() == b.coeffs_.cols() && a.coeffs_ == b.coeffs_;
}

void to_json(nlohmann::json& j, const ParameterSet& p) {
  std::vector<double> flat;
  flat.reserve(static_cast<std::size_t>(p.size()));
  for (int r = 0; r < p.n_controls(); ++r) {
    for (int c = 0; c < p.n_modes(); ++c) {
      flat.push_back(p(r, c));
    }
  }
  j = nlohmann::json{{"kind", std::string(to_string(p.kind()))},
                     {"n_q", p.n_qubits()},
                     {"n_f", p.n_modes()},
                     {"coeffs", flat}};
}

ParameterSet parameter_set_from_json(const nlohmann::json& j) {
  const auto kind = parse_ansatz_kind(j.at("kind").get<std::string>());
  const int n_q = j.at("n_q").get<int>();
  const int n_f = j.at("n_f").get<int>();
  const auto flat = j.at("coeffs").get<std::vector<double>>();
  check_qubits(n_q, "parameter_set_from_json");
  check_modes(n_f, "parameter_set_from_json");
  const int rows = ising_control_count(n_q);
  if (flat.size() != static_cast<std::size_t>(rows) * n_f) {
    throw std::invalid_argument("parameter_set_from_json: expected " +
                                std::to_string(rows * n_f) +
                                " coefficients, got " +
                                std::to_string(flat.size()));
  }
  RealMatrix c(rows, n_f);
  for (int r = 0; r < rows; ++r) {
    for (int k = 0; k < n_f; ++k) {
      c(r, k) = flat[static_cast<std::size_t>(r) * n_f + k];
    }
  }
  return ParameterSet(kind, n_q, std::move(c));
}

ControlSystem::ControlSystem(int n_qubits, std::vector<ComplexMatrix> generators,
                             std::vector<std::string> labels)
    : n_qubits_(n_qubits),
      generators_(std::move(generators)),
      labels_(std::move(labels)) {
  monomials_.reserve(generators_.size());
  norm_bounds_.reserve(generators_.size());
  for (const auto& h : generators_) {
    RowMonomial m;
    m.column.resize(static_cast<std::size_t>(h.rows()));
    m.value.resize(static_cast<std::size_t>(h.rows()));
    for (Eigen::Index r = 0; r < h.rows(); ++r) {
      int nonzeros = 0;
      for (Eigen::Index c = 0; c < h.cols(); ++c) {
        if (h(r, c) != Complex{0.0, 0.0}) {
          m.column[static_cast<std::size_t>(r)] = c;
          m.value[static_cast<std::size_t>(r)] = h(r, c);
          ++nonzeros;
        }
      }
      if (nonzeros != 1) {
        throw std::invalid_argument(
            "ControlSystem: generators must have one nonzero per row");
      }
    }
    const auto same = std::find_if(
        patterns_.begin(), patterns_.end(),
        [&](const Pattern& p) { return p.column == m.column; });
    if (same == patterns_.end()) {
      patterns_.push_back({m.column, {static_cast<int>(monomials_.size())}});
    } else {
      same->members.push_back(static_cast<int>(monomials_.size()));
    }
    monomials_.push_back(std::move(m));
    // Max absolute row sum bounds the spectral norm of a Hermitian matrix.
    norm_bounds_.push_back(h.cwiseAbs().rowwise().sum().maxCoeff());
  }
}

void ControlSystem::apply_hamiltonian(const RealVector& weights,
                                      const ComplexMatrix& x,
                                      ComplexMatrix& y) const {
  if (weights.size() != n_controls() || x.rows() != dim()) {
    throw std::invalid_argument("ControlSystem::apply_hamiltonian: shape");
  }
  std::vector<Complex> values;
  combine(weights, values);
  ComplexMatrix out(x.rows(), x.cols());
  apply_combined(values, x.data(), out.data(), x.cols());
  y = std::move(out);
}

double ControlSystem::combine(const RealVector& weights,
                              std::vector<Complex>& values) const {
  const auto d = static_cast<std::size_t>(dim());
  values.assign(patterns_.size() * d, Complex{0.0, 0.0});
  for (std::size_t g = 0; g < patterns_.size(); ++g) {
    Complex* v = values.data() + g * d;
    for (int j : patterns_[g].members) {
      const double w = weights[j];
      if (w == 0.0) {
        continue;
      }
      const auto& m = monomials_[static_cast<std::size_t>(j)].value;
      for (std::size_t r = 0; r < d; ++r) {
        v[r] += w * m[r];
      }
    }
  }
  double bound = 0.0;
  for (std::size_t r = 0; r < d; ++r) {
    double row = 0.0;
    for (std::size_t g = 0; g < patterns_.size(); ++g) {
      row += std::abs(values[g * d + r]);
    }
    bound = std::max(bound, row);
  }
  return bound;
}

void ControlSystem::apply_combined(const std::vector<Complex>& values,
                                   const Complex* x, Complex* y,
                                   Eigen::Index cols) const {
  const auto d = static_cast<std::size_t>(dim());
  const std::size_t n_g = patterns_.size();
  for (Eigen::Index c = 0; c < cols; ++c) {
    const Complex* xc = x + static_cast<std::size_t>(c) * d;
    Complex* yc = y + static_cast<std::size_t>(c) * d;
    for (std::size_t r = 0; r < d; ++r) {
      Complex s{0.0, 0.0};
      for (std::size_t g = 0; g < n_g; ++g) {
        s += values[g * d + r] * xc[patterns_[g].column[r]];
      }
      yc[r] = s;
    }
  }
}

ComplexMatrix ControlSystem::hamiltonian(const RealVector& weights) const {
  if (weights.size() != n_controls()) {
    throw std::invalid_argument("ControlSystem::hamiltonian: expected " +
                                std::to_string(n_controls()) + " weights");
  }
  ComplexMatrix h = ComplexMatrix::Zero(dim(), dim());
  for (int j = 0; j < n_controls(); ++j) {
    if (weights[j] != 0.0) {
      h += weights[j] * generators_[static_cast<std::size_t>(j)];
    }
  }
  return h;
}

ControlSystem build_ising_system(int n_qubits) {
  check_qubits(n_qubits, "build_ising_system");
  std::vector<ComplexMatrix> gens;
  std::vector<std::string> labels;
  for (int q = 1; q <= n_qubits; ++q) {
    gens.push_back(pauli_on_qubit(PauliAxis::X, q, n_qubits));
    labels.push_back("Bx" + std::to_string(q));
    gens.push_back(pauli_on_qubit(PauliAxis::Y, q, n_qubits));
    labels.push_back("By" + std::to_string(q));
  }
  for (int q = 1; q < n_qubits; ++q) {
    gens.push_back(pauli_on_qubit(PauliAxis::Z, q, n_qubits) *
                   pauli_on_qubit(PauliAxis::Z, q + 1, n_qubits));
    labels.push_back("J" + std::to_string(q));
  }
  return ControlSystem(n_qubits, std::move(gens), std::move(labels));
}

RealVector basis_values(AnsatzKind kind, int n_modes, double t) {
  if (!(t >= 0.0 && t <= 1.0)) {
    throw std::out_of_range("protocol time " + std::to_string(t) +
                            " outside [0, 1]");
  }
  RealVector b = RealVector::Zero(n_modes);
  switch (kind) {
    case AnsatzKind::Fourier:
      for (int k = 0; k < n_modes; ++k) {
        b[k] = std::sin(std::numbers::pi * (k + 1) * t);
      }
      break;
    case AnsatzKind::StepWise: {
      const int idx = std::min(static_cast<int>(std::floor(t * n_modes)),
                               n_modes - 1);
      b[idx] = 1.0;
      break;
    }
  }
  return b;
}

RealVector evaluate_protocol(const ParameterSet& p, double t) {
  return p.coeffs() * basis_values(p.kind(), p.n_modes(), t);
}

ParameterSet init_parameters(AnsatzKind kind, int n_qubits, int n_modes,
                             Rng& rng) {
  ParameterSet zero(kind, n_qubits, n_modes);
  RealMatrix c(zero.n_controls(), n_modes);
  for (int j = 0; j < c.rows(); ++j) {
    for (int k = 0; k < n_modes; ++k) {
      const double bound = kind == AnsatzKind::Fourier
                               ? std::numbers::pi / (k + 1)
                               : std::numbers::pi;
      c(j, k) = rng.uniform(-bound, bound);
    }
  }
  return ParameterSet(kind, n_qubits, std::move(c));
}

RealVector sample_ball(double radius, int dim, Rng& rng) {
  if (radius < 0.0 || !std::isfinite(radius)) {
    throw std::invalid_argument("sample_ball: radius must be finite and >= 0");
  }
  if (dim < 1) {
    throw std::invalid_argument("sample_ball: dim must be positive");
  }
  if (radius == 0.0) {
    return RealVector::Zero(dim);
  }
  RealVector x(dim);
  double norm = 0.0;
  do {
    for (int i = 0; i < dim; ++i) {
      x[i] = rng.normal();
    }
    norm = x.norm();
  } while (norm == 0.0);
  const double r = radius * std::pow(rng.uniform(), 1.0 / dim);
  return x * (r / norm);
}

ParameterSet sample_parameter_set(AnsatzKind kind, int n_qubits, int n_modes,
                                  double theta_max, Rng& rng) {
  if (theta_max < 0.0) {
    throw std::invalid_argument("sample_parameter_set: theta_max must be >= 0");
  }
  ParameterSet zero(kind, n_qubits, n_modes);
  RealMatrix c(zero.n_controls(), n_modes);
  for (int k = 0; k < n_modes; ++k) {
    const double radius =
        kind == AnsatzKind::Fourier ? theta_max / (k + 1) : theta_max;
    c.col(k) = sample_ball(radius, zero.n_controls(), rng);
  }
  return ParameterSet(kind, n_qubits, std::move(c));
}

}  // namespace fqp

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

// Reference implementations the tests compare against. They share no code
// with the library: matrices come from Eigen's unsupported modules or from
// textbook formulas written out directly.

#pragma once

#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include <Eigen/Dense>
#include <unsupported/Eigen/KroneckerProduct>
#include <unsupported/Eigen/MatrixFunctions>

namespace oracle {

using C = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;

inline Mat sx() {
  Mat m(2, 2);
  m << 0, 1, 1, 0;
  return m;
}
inline Mat sy() {
  Mat m(2, 2);
  m << 0, C(0, -1), C(0, 1), 0;
  return m;
}
inline Mat sz() {
  Mat m(2, 2);
  m << 1, 0, 0, -1;
  return m;
}
inline Mat id(int d) { return Mat::Identity(d, d); }

inline Mat kron(const Mat& a, const Mat& b) {
  return Eigen::kroneckerProduct(a, b).eval();
}

/// Tensor product of single-qubit factors, factors[0] = qubit 1.
inline Mat chain(const std::vector<Mat>& factors) {
  Mat out = Mat::Identity(1, 1);
  for (const auto& f : factors) {
    out = kron(out, f);
  }
  return out;
}

inline Mat on_qubit(const Mat& op, int qubit, int n) {
  std::vector<Mat> f(static_cast<std::size_t>(n), id(2));
  f[static_cast<std::size_t>(qubit - 1)] = op;
  return chain(f);
}

/// Transverse Ising generators: X1, Y1, ..., Xn, Yn, Z1Z2, ..., Z(n-1)Zn.
inline std::vector<Mat> ising(int n) {
  std::vector<Mat> g;
  for (int q = 1; q <= n; ++q) {
    g.push_back(on_qubit(sx(), q, n));
    g.push_back(on_qubit(sy(), q, n));
  }
  for (int q = 1; q < n; ++q) {
    g.push_back(on_qubit(sz(), q, n) * on_qubit(sz(), q + 1, n));
  }
  return g;
}

/// exp(-i h dt) by Eigen's Pade-based matrix exponential.
inline Mat expm(const Mat& h, double dt) {
  return (C(0.0, -dt) * h).exp().eval();
}

inline double basis(bool fourier, int n_f, int k, double t) {
  if (fourier) {
    return std::sin(std::numbers::pi * (k + 1) * t);
  }
  int step = static_cast<int>(std::floor(t * n_f));
  if (step >= n_f) {
    step = n_f - 1;
  }
  return step == k ? 1.0 : 0.0;
}

/// Midpoint product formula with dense exponentials.
inline Mat propagate(const Eigen::MatrixXd& coeffs, bool fourier, int n,
                     int n_steps) {
  const auto gens = ising(n);
  const double dt = 1.0 / n_steps;
  Mat u = id(1 << n);
  for (int m = 0; m < n_steps; ++m) {
    const double t = (m + 0.5) * dt;
    Mat h = Mat::Zero(1 << n, 1 << n);
    for (int j = 0; j < coeffs.rows(); ++j) {
      double w = 0.0;
      for (int k = 0; k < coeffs.cols(); ++k) {
        w += coeffs(j, k) * basis(fourier, static_cast<int>(coeffs.cols()), k, t);
      }
      h += w * gens[static_cast<std::size_t>(j)];
    }
    u = expm(h, dt) * u;
  }
  return u;
}

/// Printed 1-based transform: V_{k,l} = d^{-1/2} exp(2 pi i k l / d).
inline Mat qft(int n) {
  const int d = 1 << n;
  Mat v(d, d);
  for (int k = 1; k <= d; ++k) {
    for (int l = 1; l <= d; ++l) {
      v(k - 1, l - 1) = std::polar(1.0 / std::sqrt(static_cast<double>(d)),
                                   2.0 * std::numbers::pi * k * l / d);
    }
  }
  return v;
}

inline Vec product_state(const std::vector<double>& phi,
                         const std::vector<double>& psi) {
  Vec out = Vec::Ones(1);
  for (std::size_t i = 0; i < phi.size(); ++i) {
    Vec q(2);
    q << std::cos(phi[i] / 2), std::polar(std::sin(phi[i] / 2), psi[i]);
    Vec next(out.size() * 2);
    for (Eigen::Index a = 0; a < out.size(); ++a) {
      next(2 * a) = out(a) * q(0);
      next(2 * a + 1) = out(a) * q(1);
    }
    out = next;
  }
  return out;
}

inline double max_abs(const Mat& m) { return m.cwiseAbs().maxCoeff(); }

}  // namespace oracle

// Copyright 2026 Spincool Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "spincool/ladder.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace spincool {

namespace {

bool is_half_integer(double x) {
  return std::abs(2.0 * x - std::round(2.0 * x)) < 1e-9;
}

}  // namespace

LadderBasis build_basis(double I1, double I2) {
  if (!(I1 > 0.0) || !(I2 > 0.0)) {
    throw std::invalid_argument("build_basis: spins must be positive, got I1=" +
                                std::to_string(I1) + " I2=" + std::to_string(I2));
  }
  if (!is_half_integer(I1) || !is_half_integer(I2)) {
    throw std::invalid_argument("build_basis: spins must be half-integers, got I1=" +
                                std::to_string(I1) + " I2=" + std::to_string(I2));
  }
  if (std::abs(I1 + I2 - std::round(I1 + I2)) > 1e-9) {
    throw std::invalid_argument(
        "build_basis: I1 + I2 must be integral or the zero-polarization sector is empty");
  }
  LadderBasis b;
  b.I1 = I1;
  b.I2 = I2;
  b.M = std::min(I1, I2);
  b.dim_bath = static_cast<int>(std::lround(2.0 * b.M)) + 1;
  b.dim_total = 2 * b.dim_bath;
  return b;
}

VectorXd ladder_raising_elements(const LadderBasis& b) {
  VectorXd e(b.dim_bath - 1);
  for (int n = 0; n + 1 < b.dim_bath; ++n) {
    const double m1 = b.m1(n);
    const double m2 = b.m2(n);
    const double up1 = b.I1 * (b.I1 + 1.0) - m1 * (m1 + 1.0);
    const double dn2 = b.I2 * (b.I2 + 1.0) - m2 * (m2 - 1.0);
    e[n] = std::sqrt(up1 * dn2);
  }
  return e;
}

MatrixXcd op_i1z(const LadderBasis& b) {
  MatrixXcd m = MatrixXcd::Zero(b.dim_bath, b.dim_bath);
  for (int n = 0; n < b.dim_bath; ++n) m(n, n) = b.m1(n);
  return m;
}

MatrixXcd op_i2z(const LadderBasis& b) {
  MatrixXcd m = MatrixXcd::Zero(b.dim_bath, b.dim_bath);
  for (int n = 0; n < b.dim_bath; ++n) m(n, n) = b.m2(n);
  return m;
}

MatrixXcd op_ladder_plus(const LadderBasis& b) {
  MatrixXcd m = MatrixXcd::Zero(b.dim_bath, b.dim_bath);
  const VectorXd e = ladder_raising_elements(b);
  for (int n = 0; n + 1 < b.dim_bath; ++n) m(n + 1, n) = e[n];
  return m;
}

MatrixXcd op_ladder_minus(const LadderBasis& b) {
  return op_ladder_plus(b).adjoint();
}

MatrixXcd op_flipflop_diagonal(const LadderBasis& b) {
  // I^+ I^- + I^- I^+ = 2 (I(I+1) - (I^z)^2) for each species.
  MatrixXcd m = MatrixXcd::Zero(b.dim_bath, b.dim_bath);
  for (int n = 0; n < b.dim_bath; ++n) {
    const double m1 = b.m1(n);
    const double m2 = b.m2(n);
    m(n, n) = 2.0 * (b.I1 * (b.I1 + 1.0) - m1 * m1) +
              2.0 * (b.I2 * (b.I2 + 1.0) - m2 * m2);
  }
  return m;
}

MatrixXcd op_i_squared(const LadderBasis& b) {
  // (I1 + I2)^2 = I1^2 + I2^2 + 2 I1^z I2^z + I1^+ I2^- + I1^- I2^+.
  MatrixXcd m = op_ladder_plus(b) + op_ladder_minus(b);
  const double casimir = b.I1 * (b.I1 + 1.0) + b.I2 * (b.I2 + 1.0);
  for (int n = 0; n < b.dim_bath; ++n) {
    m(n, n) += casimir + 2.0 * b.m1(n) * b.m2(n);
  }
  return m;
}

MatrixXcd central_identity() { return MatrixXcd::Identity(2, 2); }

MatrixXcd central_sx() {
  MatrixXcd m = MatrixXcd::Zero(2, 2);
  m(0, 0) = -0.5;
  m(1, 1) = 0.5;
  return m;
}

MatrixXcd central_flip() {
  MatrixXcd m = MatrixXcd::Zero(2, 2);
  m(0, 1) = 1.0;
  m(1, 0) = 1.0;
  return m;
}

MatrixXcd central_sz() { return 0.5 * central_flip(); }

MatrixXcd central_down_proj() {
  MatrixXcd m = MatrixXcd::Zero(2, 2);
  m(0, 0) = 1.0;
  return m;
}

MatrixXcd central_lower() {
  MatrixXcd m = MatrixXcd::Zero(2, 2);
  m(0, 1) = 1.0;
  return m;
}

MatrixXcd kron_central_bath(const MatrixXcd& c, const MatrixXcd& bath) {
  const int nb = static_cast<int>(bath.rows());
  MatrixXcd out(2 * nb, 2 * nb);
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      out.block(i * nb, j * nb, nb, nb) = c(i, j) * bath;
    }
  }
  return out;
}

StateDefects state_defects(const CompositeState& s) {
  StateDefects d;
  d.hermiticity = (s.rho - s.rho.adjoint()).cwiseAbs().maxCoeff();
  d.trace = std::abs(s.rho.trace() - complexd(1.0, 0.0));
  Eigen::SelfAdjointEigenSolver<MatrixXcd> es(0.5 * (s.rho + s.rho.adjoint()));
  d.negativity = std::max(0.0, -es.eigenvalues().minCoeff());
  return d;
}

CompositeState antipolarized_state(const LadderBasis& b) {
  CompositeState s;
  s.rho = MatrixXcd::Zero(b.dim_total, b.dim_total);
  s.rho(0, 0) = 1.0;
  return s;
}

CompositeState thermal_state(const LadderBasis& b) {
  CompositeState s;
  s.rho = kron_central_bath(
      central_down_proj(),
      MatrixXcd::Identity(b.dim_bath, b.dim_bath) / static_cast<double>(b.dim_bath));
  return s;
}

VectorXcd singlet_bath_vector(const LadderBasis& b) {
  if (std::abs(b.I1 - b.I2) > 1e-12) {
    throw std::invalid_argument(
        "singlet_bath_vector: no total-spin-zero state exists unless I1 = I2");
  }
  VectorXcd v(b.dim_bath);
  const double norm = 1.0 / std::sqrt(static_cast<double>(b.dim_bath));
  for (int n = 0; n < b.dim_bath; ++n) v[n] = (n % 2 == 0 ? norm : -norm);
  return v;
}

MatrixXcd singlet_bath_projector(const LadderBasis& b) {
  const VectorXcd v = singlet_bath_vector(b);
  return v * v.adjoint();
}

CompositeState singlet_state(const LadderBasis& b) {
  CompositeState s;
  s.rho = kron_central_bath(central_down_proj(), singlet_bath_projector(b));
  return s;
}

MatrixXcd bath_density(const CompositeState& s, const LadderBasis& b) {
  const int nb = b.dim_bath;
  return s.rho.block(0, 0, nb, nb) + s.rho.block(nb, nb, nb, nb);
}

MatrixXcd bath_density_pure(const VectorXcd& psi, const LadderBasis& b) {
  const int nb = b.dim_bath;
  const VectorXcd down = psi.segment(0, nb);
  const VectorXcd up = psi.segment(nb, nb);
  return down * down.adjoint() + up * up.adjoint();
}

MatrixXcd central_density(const CompositeState& s, const LadderBasis& b) {
  const int nb = b.dim_bath;
  MatrixXcd c(2, 2);
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      c(i, j) = s.rho.block(i * nb, j * nb, nb, nb).trace();
    }
  }
  return c;
}

CompositeState reset_map(const CompositeState& s, const LadderBasis& b) {
  CompositeState out;
  out.rho = kron_central_bath(central_down_proj(), bath_density(s, b));
  return out;
}

double impurity(const MatrixXcd& rho_b) {
  return 1.0 - (rho_b * rho_b).trace().real();
}

double trace_distance(const MatrixXcd& a, const MatrixXcd& b) {
  Eigen::SelfAdjointEigenSolver<MatrixXcd> es(a - b);
  return 0.5 * es.eigenvalues().cwiseAbs().sum();
}

Observables measure(const CompositeState& s, const LadderBasis& b) {
  const int nb = b.dim_bath;
  const MatrixXcd rho_b = bath_density(s, b);
  Observables o;
  o.sx = 0.5 * (s.rho.block(nb, nb, nb, nb).trace().real() -
                s.rho.block(0, 0, nb, nb).trace().real());
  double i1z = 0.0, i2z = 0.0, i1z2 = 0.0, i2z2 = 0.0;
  for (int n = 0; n < nb; ++n) {
    const double p = rho_b(n, n).real();
    i1z += p * b.m1(n);
    i2z += p * b.m2(n);
    i1z2 += p * b.m1(n) * b.m1(n);
    i2z2 += p * b.m2(n) * b.m2(n);
  }
  o.i1z = i1z;
  o.i2z = i2z;
  o.var_i1z = i1z2 - i1z * i1z;
  o.var_i2z = i2z2 - i2z * i2z;
  o.i_sq = (rho_b * op_i_squared(b)).trace().real();
  o.impurity = impurity(rho_b);
  return o;
}

double antipolarized_i_squared(const LadderBasis& b) {
  return (b.I1 + b.I2) * (std::abs(b.I1 - b.I2) + 1.0);
}

double manifold_probability(double I1, double I2, double N) {
  if (!(N > 0.0)) {
    throw std::invalid_argument("manifold_probability: ensemble size must be positive");
  }
  if (I1 < 0.0 || I2 < 0.0) {
    throw std::invalid_argument("manifold_probability: spins must be non-negative");
  }
  return I1 * (I1 + 1.0) * I2 * (I2 + 1.0) *
         std::exp(-2.0 * (I1 * I1 + I2 * I2) / N);
}

}  // namespace spincool

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

#pragma once

// Brute-force oracles built in the full (2 I1 + 1)(2 I2 + 1) product basis.
// Everything here is constructed from the elementary angular momentum matrix
// elements only, independent of the restricted-ladder code paths, so that the
// restricted operators can be checked by explicit projection. Dimensions grow
// quadratically; intended for I <= 5.

#include <Eigen/Dense>

#include <cmath>
#include <complex>

#include "spincool/ladder.hpp"

namespace spincool::oracle {

// Single-spin matrices with m ordered ascending, index k = m + I.
inline MatrixXcd spin_z(double I) {
  const int d = static_cast<int>(std::lround(2.0 * I)) + 1;
  MatrixXcd m = MatrixXcd::Zero(d, d);
  for (int k = 0; k < d; ++k) m(k, k) = -I + k;
  return m;
}

inline MatrixXcd spin_plus(double I) {
  const int d = static_cast<int>(std::lround(2.0 * I)) + 1;
  MatrixXcd m = MatrixXcd::Zero(d, d);
  for (int k = 0; k + 1 < d; ++k) {
    const double mm = -I + k;
    m(k + 1, k) = std::sqrt(I * (I + 1.0) - mm * (mm + 1.0));
  }
  return m;
}

inline MatrixXcd spin_minus(double I) { return spin_plus(I).adjoint(); }

inline MatrixXcd spin_x(double I) {
  return 0.5 * (spin_plus(I) + spin_minus(I));
}

inline MatrixXcd kron(const MatrixXcd& a, const MatrixXcd& b) {
  MatrixXcd out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

// Lift single-spin operators to the product space; spin 1 is the slow index.
inline MatrixXcd on_spin1(const MatrixXcd& a, double I2) {
  const int d2 = static_cast<int>(std::lround(2.0 * I2)) + 1;
  return kron(a, MatrixXcd::Identity(d2, d2));
}

inline MatrixXcd on_spin2(double I1, const MatrixXcd& a) {
  const int d1 = static_cast<int>(std::lround(2.0 * I1)) + 1;
  return kron(MatrixXcd::Identity(d1, d1), a);
}

// Number of product states with I1^z + I2^z equal to `sector`.
inline int sector_dimension(double I1, double I2, double sector) {
  int count = 0;
  const int d1 = static_cast<int>(std::lround(2.0 * I1)) + 1;
  const int d2 = static_cast<int>(std::lround(2.0 * I2)) + 1;
  for (int k1 = 0; k1 < d1; ++k1) {
    for (int k2 = 0; k2 < d2; ++k2) {
      const double m1 = -I1 + k1;
      const double m2 = -I2 + k2;
      if (std::abs(m1 + m2 - sector) < 1e-9) ++count;
    }
  }
  return count;
}

// Selection matrix mapping the product space onto the ladder ordering
// |n> = |m1 = -M + n, m2 = M - n>; shape dim_bath x (d1 * d2).
inline MatrixXcd ladder_projector(const LadderBasis& b) {
  const int d1 = static_cast<int>(std::lround(2.0 * b.I1)) + 1;
  const int d2 = static_cast<int>(std::lround(2.0 * b.I2)) + 1;
  MatrixXcd p = MatrixXcd::Zero(b.dim_bath, d1 * d2);
  for (int n = 0; n < b.dim_bath; ++n) {
    const int k1 = static_cast<int>(std::lround(b.m1(n) + b.I1));
    const int k2 = static_cast<int>(std::lround(b.m2(n) + b.I2));
    p(n, k1 * d2 + k2) = 1.0;
  }
  return p;
}

// Restriction of a product-space operator to the ladder.
inline MatrixXcd restrict_to_ladder(const LadderBasis& b, const MatrixXcd& full) {
  const MatrixXcd p = ladder_projector(b);
  return p * full * p.adjoint();
}

// Largest matrix element of `full` connecting the ladder to its complement;
// zero iff the operator preserves the sector spanned by the ladder.
inline double sector_leakage(const LadderBasis& b, const MatrixXcd& full) {
  const MatrixXcd p = ladder_projector(b);
  const MatrixXcd pi = p.adjoint() * p;  // orthogonal projector onto the ladder
  const MatrixXcd id = MatrixXcd::Identity(full.rows(), full.cols());
  return ((id - pi) * full * pi).cwiseAbs().maxCoeff();
}

// Central spin operators defined in the z basis {|down_z>, |up_z>} and rotated
// into the stored {|down_x>, |up_x>} ordering; an independent route to the
// x-basis matrices used by the library.
inline MatrixXcd central_x_basis_transform() {
  MatrixXcd r(2, 2);  // columns are |down_x>, |up_x> expressed in the z basis
  const double s = 1.0 / std::sqrt(2.0);
  r(0, 0) = -s;  // <down_z|down_x>
  r(1, 0) = s;   // <up_z|down_x>
  r(0, 1) = s;
  r(1, 1) = s;
  return r;
}

inline MatrixXcd central_in_stored_basis(const MatrixXcd& op_z_basis) {
  const MatrixXcd r = central_x_basis_transform();
  return r.adjoint() * op_z_basis * r;
}

inline MatrixXcd central_z_basis_sz() {
  MatrixXcd m = MatrixXcd::Zero(2, 2);
  m(0, 0) = -0.5;
  m(1, 1) = 0.5;
  return m;
}

inline MatrixXcd central_z_basis_sx() {
  MatrixXcd m = MatrixXcd::Zero(2, 2);
  m(0, 1) = 0.5;
  m(1, 0) = 0.5;
  return m;
}

}  // namespace spincool::oracle

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

// Restricted state space for two collective spins I1, I2 confined to the
// I1^z + I2^z = 0 sector, tensored with a central spin-1/2.
//
// Rung n of the ladder is the product state |I1^z = -M + n, I2^z = M - n>
// with M = min(I1, I2) and n = 0..2M. The central spin is stored in its
// x eigenbasis, ordered {|down_x>, |up_x>}, so S_x is diagonal and the
// physical sigma_z acts as the flip matrix. Composite indices are
// c * dim_bath + n with c = 0 for down_x.

#include <Eigen/Dense>

#include <complex>

namespace spincool {

using complexd = std::complex<double>;
using Eigen::MatrixXcd;
using Eigen::VectorXcd;
using Eigen::VectorXd;

struct LadderBasis {
  double I1 = 0.0;
  double I2 = 0.0;
  double M = 0.0;
  int dim_bath = 0;   // 2M + 1
  int dim_total = 0;  // 2 (2M + 1)

  double m1(int n) const { return -M + n; }
  double m2(int n) const { return M - n; }
};

// Each spin must be a positive half-integer and I1 + I2 must be integral
// (otherwise the I1^z + I2^z = 0 sector is empty). Throws
// std::invalid_argument on violation.
LadderBasis build_basis(double I1, double I2);

// e_n = <n+1| I1^+ I2^- |n> for n = 0..2M-1. Equals (2I - n)(n + 1) when
// I1 = I2 = I; strictly positive in the interior, and the ladder closes at
// both ends (the n = -1 and n = 2M+1 couplings vanish identically).
VectorXd ladder_raising_elements(const LadderBasis& b);

// Bath-space operators, dim_bath x dim_bath.
MatrixXcd op_i1z(const LadderBasis& b);
MatrixXcd op_i2z(const LadderBasis& b);
MatrixXcd op_ladder_plus(const LadderBasis& b);   // I1^+ I2^- restricted
MatrixXcd op_ladder_minus(const LadderBasis& b);  // I1^- I2^+ restricted
// I_i^+ I_i^- + I_i^- I_i^+ summed over i = 1, 2; diagonal on the ladder.
MatrixXcd op_flipflop_diagonal(const LadderBasis& b);
// Total (I1 + I2)^2; tridiagonal on the ladder.
MatrixXcd op_i_squared(const LadderBasis& b);

// Central-spin matrices in the stored {|down_x>, |up_x>} ordering.
MatrixXcd central_identity();
MatrixXcd central_sx();         // diag(-1/2, +1/2)
MatrixXcd central_sz();         // (1/2) * flip
MatrixXcd central_flip();       // physical sigma_z, [[0,1],[1,0]]
MatrixXcd central_down_proj();  // |down_x><down_x|
MatrixXcd central_lower();      // |down_x><up_x|

// kron(c, bath) with the composite index convention above.
MatrixXcd kron_central_bath(const MatrixXcd& c, const MatrixXcd& bath);

struct CompositeState {
  MatrixXcd rho;  // dim_total x dim_total
};

// Largest violation of hermiticity / unit trace / positivity. A state is
// accepted when hermiticity and trace defects are below 1e-12 and the most
// negative eigenvalue is above -1e-10.
struct StateDefects {
  double hermiticity = 0.0;
  double trace = 0.0;
  double negativity = 0.0;  // max(0, -min eigenvalue)
  bool ok(double herm_tol = 1e-12, double pos_tol = 1e-10) const {
    return hermiticity <= herm_tol && trace <= herm_tol && negativity <= pos_tol;
  }
};
StateDefects state_defects(const CompositeState& s);

// |down_x> (x) |n = 0>, the target of the purification stage.
CompositeState antipolarized_state(const LadderBasis& b);
// |down_x><down_x| (x) identity / dim_bath.
CompositeState thermal_state(const LadderBasis& b);

// Many-body singlet amplitudes (-1)^n / sqrt(2M + 1). Requires I1 = I2.
VectorXcd singlet_bath_vector(const LadderBasis& b);
MatrixXcd singlet_bath_projector(const LadderBasis& b);
// |down_x> (x) singlet.
CompositeState singlet_state(const LadderBasis& b);

// Projective reset of the central spin: rho -> |down_x><down_x| (x) Tr_c rho.
// Trace preserving, idempotent, leaves every bath observable unchanged.
CompositeState reset_map(const CompositeState& s, const LadderBasis& b);

// Partial traces.
MatrixXcd bath_density(const CompositeState& s, const LadderBasis& b);
MatrixXcd bath_density_pure(const VectorXcd& psi, const LadderBasis& b);
MatrixXcd central_density(const CompositeState& s, const LadderBasis& b);

struct Observables {
  double sx = 0.0;
  double i1z = 0.0;
  double i2z = 0.0;
  double var_i1z = 0.0;
  double var_i2z = 0.0;
  double i_sq = 0.0;
  double impurity = 0.0;
};
Observables measure(const CompositeState& s, const LadderBasis& b);

// 1 - Tr rho_b^2 for a bath density matrix.
double impurity(const MatrixXcd& rho_b);
// (1/2) || a - b ||_1 for Hermitian a, b.
double trace_distance(const MatrixXcd& a, const MatrixXcd& b);
// <I^2> of the anti-polarized state, (I1 + I2)(|I1 - I2| + 1).
double antipolarized_i_squared(const LadderBasis& b);

// Unnormalized thermal weight of the (I1, I2) manifold in an ensemble of N
// spins, I1(I1+1) I2(I2+1) exp(-2(I1^2 + I2^2)/N). Vanishes at I = 0; the
// mode sits near I1 = I2 = sqrt(N/2).
double manifold_probability(double I1, double I2, double N);

}  // namespace spincool

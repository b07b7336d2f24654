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

#include <Eigen/SparseCore>
#include <vector>

#include "spincool/hamiltonian.hpp"
#include "spincool/ladder.hpp"

namespace spincool {

// Continuous counterpart of the pulsed loop: master-equation evolution and
// direct steady-state solution with the reset acting as a pumping channel.

// One dissipative channel; the collapse operator applied to the state is
// sqrt(rate) * op.
struct CollapseChannel {
  double rate = 0.0;  // rad/s
  MatrixXcd op;
};

struct LiouvillianSpec {
  MatrixXcd h;
  std::vector<CollapseChannel> channels;
};

// Pumping sqrt(gamma_op) |down_x><up_x|, central dephasing
// sqrt(gamma_c) S_x, and species dephasing sqrt(gamma_b/2) I_i^z for each
// species, on top of the rotating-frame Hamiltonian.
LiouvillianSpec protocol_liouvillian(const LadderBasis& basis,
                                     const PhysicalParams& params);

// Column-stacking generator: L vec(rho) = vec(-i[H, rho] + dissipators).
// Throws std::invalid_argument on dimension mismatch or negative rates.
MatrixXcd build_liouvillian(const LiouvillianSpec& spec);
Eigen::SparseMatrix<complexd> build_liouvillian_sparse(
    const LiouvillianSpec& spec);

// Direct solve of L vec(rho) = 0 with the trace normalization imposed as a
// replacement row. A dense factorization is used while dim^2 stays at or
// below dense_threshold, a sparse LU beyond it. The result is Hermitized;
// eigenvalues below -1e-10 are clipped with a warning on stderr, smaller
// negative rounding noise silently. Throws std::runtime_error when the solve
// leaves a large fixed-point residual or when the normalized solution is
// grossly indefinite, the signature of a stationary manifold with more than
// one dimension.
CompositeState steady_state(const LiouvillianSpec& spec,
                            int dense_threshold = 40000);

// Adaptive Dormand-Prince integration of the master equation, sampled at
// the (ascending, non-negative) times in t_grid. Throws
// std::runtime_error on step-size underflow.
std::vector<CompositeState> evolve(const LiouvillianSpec& spec,
                                   const CompositeState& rho0,
                                   const std::vector<double>& t_grid);

struct ContinuousPoint {
  double kappa = 0.0;
  double impurity = 0.0;
  double fidelity_n0 = 0.0;  // bath overlap with the bottom rung
  bool dense = true;
  double wall_time_s = 0.0;
};

// One steady-state solve per kappa, varying the species splitting at
// fixed N, a, omega_c with the drive on resonance and the pumping rate at
// its default 2 pi / tau0 unless overridden in params.
std::vector<ContinuousPoint> steady_impurity_sweep(
    const LadderBasis& basis, const PhysicalParams& params,
    const std::vector<double>& kappa_grid, int threads = 0);

}  // namespace spincool

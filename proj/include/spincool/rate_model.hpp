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

// Classical rate-equation surrogate for the continuous cooling protocol on an
// equal-spin ladder n = 0..2I. Each rung exchanges population with its
// neighbors through driven flip rates; the stationary distribution and the
// relaxation spectrum of the tridiagonal generator give the steady impurity
// and the convergence time without simulating any quantum dynamics.

#include <Eigen/Dense>

#include <vector>

#include "spincool/hamiltonian.hpp"

namespace spincool {

struct RateParams {
  double I = 0.0;            // equal collective spins; ladder has 2I + 1 rungs
  double g = 0.0;            // three-body exchange unit
  double delta_omega = 0.0;  // species splitting
  double Omega = 0.0;        // drive amplitude
  double gamma_op = 0.0;     // pumping rate
  double gamma_d = 0.0;      // total dephasing rate
  double gamma_prime() const { return 0.5 * gamma_op + gamma_d; }
};

// Surrogate at the exchange resonance for the given scales.
RateParams rate_params_from(const DerivedScales& s, double I);

// Directed rates r_n^+ (n -> n+1) and r_n^- (n -> n-1), n = 0..2I:
//   r_n^pm = (gamma_op/2) X_pm / (1 + X_pm + (Delta_pm / gamma')^2),
//   X_pm = (alpha_n^pm)^2 / (gamma_op gamma'),
//   alpha_n^+ = g (2I - n)(n + 1),  alpha_n^- = g (2I - n + 1) n,
//   Delta_- = Omega - delta_omega,  Delta_+ = Omega + delta_omega.
// The boundary rates r_0^- and r_2I^+ vanish identically.
struct LadderRates {
  VectorXd up;
  VectorXd down;
};
LadderRates scattering_rates(const RateParams& p);

// Stationary distribution from the three-term recursion
//   p_1 = (r_0^+ / r_1^-) p_0,
//   p_{n+2} = ((r_{n+1}^- + r_{n+1}^+) / r_{n+2}^-) p_{n+1}
//             - (r_n^+ / r_{n+2}^-) p_n,
// normalized to sum 1. The subtraction cancels catastrophically in plain
// doubles once the populations span many decades, so the recursion runs in
// compensated double-double arithmetic. Requires g > 0 and gamma_op > 0
// (zero interior rates would divide by zero).
VectorXd steady_populations(const RateParams& p);

// 1 - sum_n p_n^2.
double steady_impurity_from(const VectorXd& populations);
double steady_impurity(const RateParams& p);

// Tridiagonal generator: d p_n / dt = -(r_n^+ + r_n^-) p_n
// + r_{n-1}^+ p_{n-1} + r_{n+1}^- p_{n+1}. Columns sum to zero exactly.
Eigen::MatrixXd build_lambda(const RateParams& p);

// Eigenvalues of the generator, ascending. Computed through the
// detailed-balance symmetrization (off-diagonals sqrt(r_n^+ r_{n+1}^-)),
// which shares the spectrum and is manifestly real. The largest eigenvalue
// is 0 (conservation); lambda_1 is the largest nonzero one and
// t_c = 2 pi / |lambda_1|.
struct RelaxationSpectrum {
  VectorXd eigenvalues;
  double lambda_1 = 0.0;
  double t_c = 0.0;
};
RelaxationSpectrum relaxation_spectrum(const RateParams& p);

// Two-level estimate 2 r_0^+ / r_1^- at the exchange resonance,
//   2 [1 + (4 delta_omega^2 / (gamma_op gamma' + alpha^2)) (gamma_op /
//   gamma')]^-1 with alpha = 2 g I.
double analytic_impurity_two_level(const RateParams& p);

// Thermodynamic-limit closed form 2 / (1 + 64 kappa^2 (1 + 2 gamma_d /
// gamma_op)^-2), valid for small results; not clamped here.
double analytic_impurity_thermodynamic(double kappa, double gamma_d_over_gamma_op);

struct DetuningPoint {
  double Omega = 0.0;
  double impurity = 0.0;
};
std::vector<DetuningPoint> detuning_scan(const RateParams& base,
                                         const VectorXd& omegas);

// Full width at half maximum of 1 / impurity(Omega) on the given grid, by
// linear interpolation of the half-crossings. Throws if the peak touches a
// grid edge.
double resonance_fwhm(const RateParams& base, const VectorXd& omegas);

struct DephasingPoint {
  double norm_dephasing = 0.0;  // gamma_d / gamma_op = gamma_d tau0 / (2 pi)
  double impurity = 0.0;
  double t_c = 0.0;
};
std::vector<DephasingPoint> dephasing_scan(const RateParams& base,
                                           const VectorXd& norm_dephasing);

}  // namespace spincool

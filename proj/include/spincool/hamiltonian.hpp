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

// Rotating-frame generators on the restricted ladder and the derived
// frequency scales. All inputs are angular frequencies (rad/s); the
// config loader converts Hz by 2 pi before anything reaches this layer.

#include <optional>

#include "spincool/ladder.hpp"

namespace spincool {

inline constexpr double kTwoPi = 6.283185307179586476925286766559;

struct PhysicalParams {
  double omega_c = 0.0;   // central-spin splitting
  double omega_1 = 0.0;   // species-1 Zeeman
  double omega_2 = 0.0;   // species-2 Zeeman
  double a = 0.0;         // collinear hyperfine coupling per spin
  double nu_1 = 0.0;      // non-collinear couplings; bookkeeping only, the
  double nu_2 = 0.0;      // restricted dynamics never uses them
  double N = 0.0;         // effective ensemble size for scale conversions
  double Omega = 0.0;     // drive amplitude
  double delta = 0.0;     // drive detuning
  double gamma_c = 0.0;   // central-spin dephasing rate
  double gamma_b = 0.0;   // bath dephasing rate
  // Optical pumping rate; when unset the optimal value 2 pi / tau0 is used.
  std::optional<double> gamma_op;
  // Interaction time override; when unset tau0 = 2 pi omega_c / (a^2 I1 I2).
  std::optional<double> tau0_override;
};

struct DerivedScales {
  double g = 0.0;            // a^2 / (4 omega_c)
  double delta_omega = 0.0;  // omega_1 - omega_2
  double kappa = 0.0;        // omega_c delta_omega / (N a^2)
  double tau0 = 0.0;
  double gamma_op = 0.0;
  double gamma_d = 0.0;      // gamma_c + gamma_b
  double gamma_prime = 0.0;  // gamma_op / 2 + gamma_d
  double norm_dephasing = 0.0;  // gamma_d tau0 / (2 pi)
};

// Requires omega_c > 0, a > 0, N > 0. kappa uses params.N; tau0 uses the
// basis spins (identity: with I1 = I2 = sqrt(N/2), gamma_op = N a^2 / (2
// omega_c) and delta_omega / gamma_op = 2 kappa).
DerivedScales derive_scales(const PhysicalParams& p, const LadderBasis& b);

// Validity-regime guard used when parameters come from physical platform
// tables: omega_c > omega_1 >= omega_2 > a and |delta| < Omega hierarchy.
// Throws std::invalid_argument with the offending relation.
void check_hierarchy(const PhysicalParams& p);

// Engine-unit parameter set: anchors a and omega_c so that a^2/(4 omega_c)
// equals g_value exactly and delta_omega = 4 kappa N g_value, with the Zeeman
// hierarchy satisfied for any engine-scale kappa, N. The drive defaults to
// the exchange resonance Omega = delta_omega, delta = 0.
PhysicalParams dimensionless_params(double kappa, double N, double g_value = 1.0);

// Full rotating-frame generator on the composite space:
//   Omega S_x + delta S_z + sum_i (omega_i - g) I_i^z
//   + a S_z (I1^z + I2^z) + g S_z sum_ij (I_i^+ I_j^- + I_i^- I_j^+)
// restricted to the ladder. On the ladder the collinear term vanishes
// (I1^z + I2^z = 0 on every rung) and the Zeeman terms reduce to
// (n - M) delta_omega.
MatrixXcd build_rotating_hamiltonian(const LadderBasis& b, const PhysicalParams& p);

// Resonant exchange generator g (|up_x><down_x| L- + |down_x><up_x| L+)
// where L+- are the restricted ladder operators; couples |down_x, n> to
// |up_x, n - 1> with element g e_{n-1}.
MatrixXcd build_exchange_hamiltonian(const LadderBasis& b, double g);
MatrixXcd build_exchange_hamiltonian(const LadderBasis& b, const PhysicalParams& p);

// exp(-i H t) for Hermitian H via eigendecomposition; unitary to machine
// precision.
MatrixXcd hermitian_propagator(const MatrixXcd& h, double t);

}  // namespace spincool

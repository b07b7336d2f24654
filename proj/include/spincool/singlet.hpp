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

// Gate-based compilation of the many-body singlet from the anti-polarized
// state. A sequence alternates central-spin z rotations with the resonant
// exchange gate; phase injection on the central spin plus rung transfer on
// the ladder weaves the alternating singlet sign pattern rung by rung.
//
// Durations are quoted in units of 1 / g, so the exchange generator enters
// at unit coupling. On any ladder the pair couplings e_n are integers, which
// makes the exact exchange gate 2 pi periodic in tau; parameters therefore
// stay unconstrained during optimization and are folded afterwards.

#include <utility>
#include <vector>

#include "spincool/hamiltonian.hpp"
#include "spincool/ladder.hpp"

namespace spincool {

enum class GateModel {
  exact,       // pair n rotates by the angle e_n tau
  simplified,  // unit-coupling idealization, defined only at its pi-time
};

struct GateStep {
  double phi = 0.0;  // z rotation angle, rad
  double tau = 0.0;  // exchange duration, units of 1 / g
};

// Applied left to right: Z(phi_0), U(tau_0), Z(phi_1), U(tau_1), ...
struct GateSequence {
  std::vector<GateStep> steps;
  GateModel model = GateModel::exact;
};

// exp(-i phi sigma_z / 2) on the central spin, identity on the bath. In the
// stored x ordering sigma_z is the flip matrix, so the 2 pi spinor sign
// appears as z_gate(phi + 2 pi) = -z_gate(phi).
MatrixXcd z_gate(double phi, const LadderBasis& b);

// Propagator of the unit-coupling exchange generator over time tau. The
// exact model rotates each (|down_x, n+1>, |up_x, n>) pair by e_n tau and
// leaves |down_x, 0> and |up_x, 2M> untouched; any real tau is accepted.
// The simplified model swaps every pair with a -i phase and exists only at
// tau = pi / 2 (throws std::invalid_argument elsewhere).
MatrixXcd exchange_gate(double tau, const LadderBasis& b, GateModel model);

// Block-structured sequence that compiles the singlet exactly on a ladder
// with 2^K rungs in the simplified model. Block j starts with a pi/2 phase
// injection and follows with 2^(j-1) - 1 redistribution steps of phase pi;
// every step uses the simplified pi-time. 2 (2^K - 1) gates in total.
GateSequence ideal_sequence(int K);

// Ordinal of the block boundary: number of primitive gates consumed once
// block j of ideal_sequence(K) has been applied, 2 (2^j - 1).
int block_gate_count(int j);

// Same phase pattern with the exact per-pair pi-times tau_j = pi / (2 e_j),
// the starting point for the variational search. Requires 2M + 1 = 2^K.
GateSequence init_guess(int K, const LadderBasis& b);

// Smallest K with 2^K >= 2M + 1. For ladders whose rung count is not a
// power of two there is no exact construction; pairing this with
// padded_guess is a heuristic, not a guarantee.
int padded_block_count(const LadderBasis& b);

// init_guess structure for K = padded_block_count(b), truncated to the 2M
// steps whose target rung exists. Experimental.
GateSequence padded_guess(const LadderBasis& b);

// |down_x> (x) |n = 0> as a vector.
VectorXcd sequence_initial_state(const LadderBasis& b);

// Recorded after every primitive gate (two per step).
struct SequenceDiagnostics {
  std::vector<double> trace_dist;       // bath vs the singlet projector
  std::vector<double> i_sq;             // <(I1 + I2)^2>
  std::vector<double> singlet_overlap;  // |<down_x, s | psi>|^2
};

// Applies the sequence to |down_x, 0> (or the given initial vector) and
// records the diagnostics. Requires I1 = I2; the singlet references are
// undefined otherwise.
std::pair<VectorXcd, SequenceDiagnostics> apply_sequence(
    const GateSequence& seq, const LadderBasis& b);
std::pair<VectorXcd, SequenceDiagnostics> apply_sequence(
    const GateSequence& seq, const LadderBasis& b, const VectorXcd& initial);

// Squared Frobenius distance Tr[(rho - target)^dag (rho - target)]; the
// optimization objective. Zero iff the matrices coincide.
double hs_cost(const MatrixXcd& rho_b, const MatrixXcd& target);

// Exact derivatives of hs_cost(final bath state, target) with respect to
// the parameters in application order {phi_0, tau_0, phi_1, tau_1, ...},
// from one forward and one backward sweep. Exact gate model only.
VectorXd analytic_gradient(const GateSequence& seq, const LadderBasis& b,
                           const MatrixXcd& target);

struct OptimizerConfig {
  double zeta = 0.015;  // learning rate
  double xi = 1e-8;     // denominator floor
  double beta = 0.85;   // gradient-square averaging weight
  int max_epochs = 1000;
  double cost_tol = 0.0;  // stop once the cost falls to this level
};

struct CostReport {
  std::vector<double> cost_trace;  // entry e: before the e-th update
  std::vector<double> trace_dist_trace;
  std::vector<double> i_sq_trace;
  GateSequence sequence;  // parameters of the best epoch, unfolded
  int best_epoch = 0;
  double best_cost = 0.0;
  double best_trace_dist = 0.0;
};

// Deterministic RMSprop descent on hs_cost starting from seq0 (exact model
// only). Each parameter keeps a running mean E of its squared gradient and
// moves by -zeta * grad / sqrt(xi + E).
//
// The descent runs in per-step rotation angles: step j's exchange
// coordinate is e_j tau_j with e_j the coupling of the pair that step's
// pi-time addresses (clamped at the ladder top for overlong sequences).
// The z phases are angles already. This keeps every coordinate O(1); in
// raw durations the learning rate dwarfs the stiff mid-ladder pi-times
// pi / (2 e_j) and the search cannot resolve them.
//
// The fixed step makes the trajectory hover around a minimum instead of
// settling, so the report returns the best epoch's parameters; the traces
// record the raw trajectory. A non-finite gradient aborts with
// std::runtime_error naming the epoch.
CostReport rmsprop_optimize(GateSequence seq0, const OptimizerConfig& cfg,
                            const LadderBasis& b, const MatrixXcd& target);

// Parameters folded into [0, 2 pi). The bath state produced by the sequence
// is unchanged; gate matrices may pick up a global sign from the z spinor.
GateSequence canonicalized(const GateSequence& seq);

// Squared overlap with |down_x> (x) singlet after free phase accumulation
// exp(i t n delta_omega) on rung n, the drift of the prepared state once
// the drive stops. Revives exactly at t = 2 pi k / delta_omega.
double refocus_overlap(const VectorXcd& psi, const LadderBasis& b,
                       double delta_omega, double t);

}  // namespace spincool

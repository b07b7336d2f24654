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

#include <vector>

#include "spincool/hamiltonian.hpp"
#include "spincool/ladder.hpp"

namespace spincool {

// Pulsed purification loop: free evolution under the rotating-frame
// Hamiltonian for one correlation window tau0, then an instantaneous
// central-spin reset, repeated until the bath settles into a limit cycle
// around the bottom rung.

struct ProtocolConfig {
  LadderBasis basis;
  PhysicalParams params;
  int n_iterations = 0;
  bool record_substeps = false;
};

// One fine-grained sample of <S_x>(t) inside the first iteration.
struct SubstepSample {
  double t = 0.0;
  double sx = 0.0;
};

struct ProtocolRun {
  ProtocolConfig config;
  DerivedScales scales;
  // series[k] is sampled after the k-th free-evolution window and before
  // the reset that closes the iteration; series[0] is the initial state.
  std::vector<Observables> series;
  std::vector<SubstepSample> substeps;
  // Rounded 3x 1/e decay estimate, or -1 when the series never decays or
  // is too short to fit.
  int converged_at = -1;
  CompositeState final_state;
};

// Mean and peak-to-peak impurity over the trailing tenth of a run, the
// window used to read a settled value out of a limit cycle.
struct SteadyStats {
  double impurity_mean = 0.0;
  double impurity_ptp = 0.0;
  int window = 0;
};

struct KappaPoint {
  double kappa = 0.0;
  double impurity = 0.0;
  double impurity_ptp = 0.0;
  double t_c = 0.0;
};

// Runs the pulsed loop from the thermal mixture. The propagator
// exp(-i H tau0) is diagonalized once and reused; every recorded state is
// checked for trace and positivity drift. Throws std::invalid_argument on
// a non-positive iteration count and std::runtime_error when the
// propagator fails its unitarity budget.
ProtocolRun run_stage2(const LadderBasis& basis, const PhysicalParams& params,
                       int n_iterations, bool record_substeps = false);

SteadyStats steady_stats(const ProtocolRun& run);

// Fits the impurity excess over its settled value to a single exponential
// on the decaying segment and returns three times the fitted 1/e iteration
// count. Throws std::runtime_error when the series does not decay or
// leaves fewer than four points above the fit floor.
double detect_convergence(const ProtocolRun& run);

// One pulsed run per kappa, varying the species splitting at fixed N, a,
// omega_c and keeping the drive on resonance. n_iterations <= 0 picks a
// count that covers the expected relaxation time with margin; threads <= 0
// uses the hardware concurrency.
std::vector<KappaPoint> sweep_kappa(const LadderBasis& basis,
                                    const PhysicalParams& params,
                                    const std::vector<double>& kappa_grid,
                                    int n_iterations = 0, int threads = 0);

}  // namespace spincool

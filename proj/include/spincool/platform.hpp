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

// Parameter tables for candidate physical systems and their projection onto
// the dimensionless operating plane (kappa, gamma_d tau0 / 2 pi). A
// quantum-dot entry scales its splittings linearly with the applied magnetic
// field; the rare-earth entry carries an effective exchange unit directly
// and sweeps the species splitting instead of the field. Everything funnels
// into the rate model, so a full field sweep costs milliseconds.

#include <optional>
#include <string>
#include <vector>

#include "spincool/hamiltonian.hpp"
#include "spincool/rate_model.hpp"

namespace spincool {

// Central-spin relaxation pinned at a reference field. Applied as
// rate * (B / field)^exponent on top of the table's dephasing rate; the
// exponent lives in PlatformParams because it is a property of the
// confinement type, not of the measurement.
struct SpinOrbitRef {
  double rate = 0.0;   // rad/s at the reference field
  double field = 0.0;  // tesla
};

struct PlatformParams {
  std::string name;

  // Field-scaled entry (quantum dots). Frequencies in rad/s.
  double hyperfine_total = 0.0;     // summed coupling A; per-spin a = A / N
  double splitting_per_field = 0.0; // species splitting slope, rad/s per T
  double central_per_field = 0.0;   // central splitting slope, rad/s per T
  double n_eff = 0.0;               // effective ensemble size
  double gamma_d = 0.0;             // dephasing rate, rad/s
  double field_min = 0.0;           // tesla, > 0
  double field_max = 0.0;
  int so_exponent = 0;              // 3 or 5; 0 disables the field scaling
  std::optional<SpinOrbitRef> so_reference;

  // Direct entry (field-free): the exchange unit g is given outright and
  // the sweep variable is the species splitting in rad/s.
  bool direct = false;
  double g_direct = 0.0;
  double splitting_min = 0.0;
  double splitting_max = 0.0;

  // Throws std::invalid_argument naming every offending field at once.
  void validate() const;
};

// Bundled tables: "GaAs-AlGaAs", "InGaAs-GaAs", "GateDefined", "REI".
// The three dot entries share the total hyperfine 2 pi x 11 GHz and
// splitting slope 2 pi x 5.76 MHz/T and differ in central splitting slope,
// ensemble size, dephasing, field window, and spin-orbit exponent (3 for
// gate confinement, 5 for epitaxial dots). The rare-earth entry is a
// four-spin register with g = 2 pi x 0.1 kHz and a quadrupolar splitting
// window of 2 pi x 10..100 kHz.
std::vector<PlatformParams> builtin_platforms();

// Exact-name lookup into builtin_platforms(); throws std::invalid_argument
// listing the known names on a miss.
PlatformParams builtin_platform(const std::string& name);

// Tables from a sectioned key = value file, one "[name]" section per entry.
// Dot entries take hyperfine_total, splitting_per_field, central_per_field
// (Hz resp. Hz/T), n_eff, gamma_d (Hz), field_min/field_max (T), and
// optionally so_exponent with so_reference_rate (Hz) at so_reference_field
// (T). A section with direct = true takes g, splitting_min, splitting_max
// (Hz) instead of the field scalings. Unknown keys and invalid fields throw
// std::invalid_argument naming the section and the offenders.
std::vector<PlatformParams> load_platforms(const std::string& path);

struct BenchPoint {
  double field = 0.0;           // tesla; 0 for direct entries
  double delta_omega = 0.0;     // rad/s
  double kappa = 0.0;
  double norm_dephasing = 0.0;  // gamma_d tau0 / (2 pi), spin-orbit included
  double impurity = 0.0;        // rate-model steady state on resonance
  double t_c = 0.0;             // seconds
};

// Operating point at one field (tesla), or at one species splitting (rad/s)
// for a direct entry. The collective spin is the half-integer nearest
// sqrt(N / 2); direct entries use I = 1. Throws std::invalid_argument when
// the sweep variable falls outside the table's window.
BenchPoint evaluate(const PlatformParams& pf, double field_or_splitting);

struct FieldSweep {
  std::vector<BenchPoint> points;  // log-spaced over the table's window
  BenchPoint best;                 // minimum impurity
  // False when the table requests a spin-orbit exponent but provides no
  // reference rate; the sweep then runs without the augmentation and says
  // so once on stderr rather than inventing a magnitude.
  bool so_applied = false;
};
FieldSweep field_sweep(const PlatformParams& pf, int n_points);

struct ImpurityMap {
  VectorXd kappa_grid;
  VectorXd dephasing_grid;  // gamma_d tau0 / (2 pi)
  // impurity(i, j) belongs to kappa_grid[i], dephasing_grid[j].
  Eigen::MatrixXd impurity;
};

// Platform-agnostic map from the closed form
// 2 / (1 + 64 kappa^2 (1 + 2 d)^-2), clamped at the maximal-mixedness value
// 1 where the small-impurity expansion overshoots (kappa -> 0).
ImpurityMap impurity_map(const VectorXd& kappa_grid,
                         const VectorXd& dephasing_grid);

}  // namespace spincool

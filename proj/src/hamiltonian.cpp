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

#include "spincool/hamiltonian.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace spincool {

DerivedScales derive_scales(const PhysicalParams& p, const LadderBasis& b) {
  if (!(p.omega_c > 0.0)) throw std::invalid_argument("derive_scales: omega_c must be positive");
  if (!(p.a > 0.0)) throw std::invalid_argument("derive_scales: a must be positive");
  if (!(p.N > 0.0)) throw std::invalid_argument("derive_scales: N must be positive");

  DerivedScales s;
  s.g = p.a * p.a / (4.0 * p.omega_c);
  s.delta_omega = p.omega_1 - p.omega_2;
  s.kappa = p.omega_c * s.delta_omega / (p.N * p.a * p.a);
  s.tau0 = p.tau0_override
               ? *p.tau0_override
               : kTwoPi * p.omega_c / (p.a * p.a * b.I1 * b.I2);
  if (!(s.tau0 > 0.0)) throw std::invalid_argument("derive_scales: tau0 must be positive");
  s.gamma_op = p.gamma_op ? *p.gamma_op : kTwoPi / s.tau0;
  if (s.gamma_op < 0.0) throw std::invalid_argument("derive_scales: gamma_op must be non-negative");
  s.gamma_d = p.gamma_c + p.gamma_b;
  s.gamma_prime = 0.5 * s.gamma_op + s.gamma_d;
  s.norm_dephasing = s.gamma_d * s.tau0 / kTwoPi;
  return s;
}

void check_hierarchy(const PhysicalParams& p) {
  if (!(p.omega_c > p.omega_1) || !(p.omega_c > p.omega_2)) {
    throw std::invalid_argument("check_hierarchy: omega_c must exceed both Zeeman splittings");
  }
  if (!(p.a < p.omega_2) || !(p.a < p.omega_1)) {
    throw std::invalid_argument("check_hierarchy: hyperfine coupling a must sit far below the Zeeman scale");
  }
  if (p.Omega != 0.0 && !(std::abs(p.delta) < p.Omega)) {
    throw std::invalid_argument("check_hierarchy: drive detuning must stay below the drive amplitude");
  }
}

PhysicalParams dimensionless_params(double kappa, double N, double g_value) {
  if (!(g_value > 0.0)) throw std::invalid_argument("dimensionless_params: g must be positive");
  if (!(N > 0.0)) throw std::invalid_argument("dimensionless_params: N must be positive");
  PhysicalParams p;
  const double delta_omega = 4.0 * kappa * N * g_value;
  p.omega_c = std::max(1e8 * g_value, 1e3 * std::abs(delta_omega));
  p.a = 2.0 * std::sqrt(g_value * p.omega_c);
  p.omega_2 = p.omega_c / 10.0;
  p.omega_1 = p.omega_2 + delta_omega;
  p.N = N;
  p.Omega = delta_omega;
  p.delta = 0.0;
  return p;
}

MatrixXcd build_rotating_hamiltonian(const LadderBasis& b, const PhysicalParams& p) {
  const double g = p.a * p.a / (4.0 * p.omega_c);
  const int nb = b.dim_bath;

  MatrixXcd zeeman = MatrixXcd::Zero(nb, nb);
  for (int n = 0; n < nb; ++n) {
    zeeman(n, n) = (p.omega_1 - g) * b.m1(n) + (p.omega_2 - g) * b.m2(n);
  }
  MatrixXcd collinear = MatrixXcd::Zero(nb, nb);
  for (int n = 0; n < nb; ++n) collinear(n, n) = b.m1(n) + b.m2(n);

  const MatrixXcd hopping =
      op_flipflop_diagonal(b) + 2.0 * (op_ladder_plus(b) + op_ladder_minus(b));

  MatrixXcd h = kron_central_bath(p.Omega * central_sx() + p.delta * central_sz(),
                                  MatrixXcd::Identity(nb, nb));
  h += kron_central_bath(central_identity(), zeeman);
  h += kron_central_bath(central_sz(), p.a * collinear + g * hopping);
  return h;
}

MatrixXcd build_exchange_hamiltonian(const LadderBasis& b, double g) {
  const MatrixXcd raise = central_lower().adjoint();
  return g * (kron_central_bath(raise, op_ladder_minus(b)) +
              kron_central_bath(central_lower(), op_ladder_plus(b)));
}

MatrixXcd build_exchange_hamiltonian(const LadderBasis& b, const PhysicalParams& p) {
  return build_exchange_hamiltonian(b, p.a * p.a / (4.0 * p.omega_c));
}

MatrixXcd hermitian_propagator(const MatrixXcd& h, double t) {
  Eigen::SelfAdjointEigenSolver<MatrixXcd> es(h);
  if (es.info() != Eigen::Success) {
    throw std::runtime_error("hermitian_propagator: eigendecomposition failed");
  }
  const VectorXd& ev = es.eigenvalues();
  VectorXcd phases(ev.size());
  for (Eigen::Index k = 0; k < ev.size(); ++k) {
    phases[k] = std::exp(complexd(0.0, -ev[k] * t));
  }
  return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
}

}  // namespace spincool

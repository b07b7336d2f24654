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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <unsupported/Eigen/MatrixFunctions>

#include <cmath>
#include <stdexcept>

#include "product_basis_oracle.hpp"
#include "spincool/hamiltonian.hpp"
#include "spincool/ladder.hpp"

using namespace spincool;

namespace {

// Epitaxial-dot-like parameter set, all in rad/s: total hyperfine 2pi 11 GHz
// split over N = 1e5 spins, Zeeman gradient 2pi 5.76 MHz/T, central splitting
// 2pi 1.3 GHz/T, at 1 T.
PhysicalParams epitaxial_like_1T() {
  PhysicalParams p;
  p.N = 1e5;
  p.a = kTwoPi * 11e9 / p.N;
  p.omega_c = kTwoPi * 1.3e9;
  p.omega_2 = kTwoPi * 50e6;
  p.omega_1 = p.omega_2 + kTwoPi * 5.76e6;
  p.gamma_c = kTwoPi * 10e3;
  return p;
}

}  // namespace

TEST_CASE("derived scales, epitaxial-like numbers") {
  auto p = epitaxial_like_1T();
  auto b = build_basis(223.5, 223.5);  // nearest half-integer to sqrt(N/2)
  auto s = derive_scales(p, b);
  CHECK(s.kappa == doctest::Approx(6.1884).epsilon(1e-3));
  CHECK(s.tau0 == doctest::Approx(2.1488e-6).epsilon(5e-3));
  CHECK(s.norm_dephasing == doctest::Approx(0.0215).epsilon(5e-3));
  CHECK(s.g == doctest::Approx(p.a * p.a / (4.0 * p.omega_c)).epsilon(1e-14));
  // Exact formula with the basis spins.
  CHECK(s.tau0 ==
        doctest::Approx(kTwoPi * p.omega_c / (p.a * p.a * 223.5 * 223.5)).epsilon(1e-14));
}

TEST_CASE("derived scales, degenerate species") {
  auto p = epitaxial_like_1T();
  p.omega_1 = p.omega_2;
  auto s = derive_scales(p, build_basis(2.0, 2.0));
  CHECK(s.delta_omega == 0.0);
  CHECK(s.kappa == 0.0);
}

TEST_CASE("engine-unit identities") {
  const double kappa = 5.0, N = 32.0;
  auto p = dimensionless_params(kappa, N);
  auto b = build_basis(4.0, 4.0);  // 2 I1 I2 = N
  auto s = derive_scales(p, b);
  CHECK(s.g == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(s.delta_omega == doctest::Approx(4.0 * kappa * N).epsilon(1e-12));
  CHECK(s.kappa == doctest::Approx(kappa).epsilon(1e-12));
  CHECK(s.tau0 == doctest::Approx(M_PI / 32.0).epsilon(1e-12));
  // delta_omega / gamma_op = 2 kappa at the optimal rate.
  CHECK(s.delta_omega / s.gamma_op == doctest::Approx(2.0 * kappa).epsilon(1e-12));
  // 4 delta_omega^2 / gamma_prime^2 = 64 kappa^2 without dephasing.
  CHECK(4.0 * s.delta_omega * s.delta_omega / (s.gamma_prime * s.gamma_prime) ==
        doctest::Approx(64.0 * kappa * kappa).epsilon(1e-12));
  CHECK_NOTHROW(check_hierarchy(p));
}

TEST_CASE("unit rescaling") {
  auto p = dimensionless_params(7.0, 50.0);
  p.gamma_c = 0.3;
  auto b = build_basis(2.5, 2.5);
  auto s = derive_scales(p, b);

  const double c = 3.7;
  PhysicalParams q = p;
  q.omega_c *= c;
  q.omega_1 *= c;
  q.omega_2 *= c;
  q.a = p.a * c;
  q.Omega *= c;
  q.delta *= c;
  q.gamma_c *= c;
  // kappa = omega_c delta_omega / (N a^2) needs omega_c to absorb the extra
  // power of c, which it does: c*c / c^2 = 1.
  auto sq = derive_scales(q, b);
  CHECK(sq.kappa == doctest::Approx(s.kappa).epsilon(1e-12));
  CHECK(sq.tau0 == doctest::Approx(s.tau0 / c).epsilon(1e-12));
  CHECK(sq.norm_dephasing == doctest::Approx(s.norm_dephasing).epsilon(1e-12));
  CHECK(sq.g == doctest::Approx(c * s.g).epsilon(1e-12));

  auto h = build_rotating_hamiltonian(b, p);
  auto hq = build_rotating_hamiltonian(b, q);
  CHECK((hq - c * h).cwiseAbs().maxCoeff() < 1e-9 * hq.cwiseAbs().maxCoeff());
}

TEST_CASE("hierarchy guard") {
  auto p = epitaxial_like_1T();
  CHECK_NOTHROW(check_hierarchy(p));
  auto bad = p;
  bad.a = p.omega_2 * 1.5;
  CHECK_THROWS_AS(check_hierarchy(bad), std::invalid_argument);
  bad = p;
  bad.omega_1 = p.omega_c * 2.0;
  CHECK_THROWS_AS(check_hierarchy(bad), std::invalid_argument);
  bad = p;
  bad.Omega = 1.0;
  bad.delta = 2.0;
  CHECK_THROWS_AS(check_hierarchy(bad), std::invalid_argument);
}

TEST_CASE("rotating generator reduces to the Zeeman diagonal") {
  auto b = build_basis(4.0, 4.0);
  PhysicalParams p;
  p.omega_c = 1.0;  // a = 0 makes g = 0 and removes every coupling
  p.a = 0.0;
  p.omega_2 = 100.0;
  p.omega_1 = 103.0;
  auto h = build_rotating_hamiltonian(b, p);
  const double dw = 3.0;
  for (int c = 0; c < 2; ++c) {
    for (int n = 0; n < b.dim_bath; ++n) {
      const int k = c * b.dim_bath + n;
      CHECK(std::abs(h(k, k) - complexd((n - 4.0) * dw, 0.0)) < 1e-10);
    }
  }
  CHECK((h - MatrixXcd(h.diagonal().asDiagonal())).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("rotating generator structure") {
  auto b = build_basis(4.0, 4.0);
  auto p = dimensionless_params(5.0, 32.0);
  auto h = build_rotating_hamiltonian(b, p);
  CHECK((h - h.adjoint()).cwiseAbs().maxCoeff() < 1e-12);
  // Flip coupling |down_x, 0> -> |up_x, 1>: the two-species hopping enters
  // with weight 2 g and the central flip contributes 1/2, net g e_0 = 8.
  CHECK(std::abs(h(b.dim_bath + 1, 0)) == doctest::Approx(8.0).epsilon(1e-12));
  // Drive splits the x states by Omega on the block diagonals.
  CHECK((h(b.dim_bath, b.dim_bath) - h(0, 0)).real() ==
        doctest::Approx(p.Omega).epsilon(1e-12));
}

TEST_CASE("rotating generator matches the product-basis oracle") {
  for (auto [i1, i2] : std::vector<std::pair<double, double>>{
           {1.5, 1.5}, {1.0, 2.0}, {2.0, 2.0}}) {
    auto b = build_basis(i1, i2);
    PhysicalParams p;
    p.omega_c = 400.0;
    p.a = 8.0;  // g = 0.04
    p.omega_2 = 90.0;
    p.omega_1 = 97.0;
    p.Omega = 7.0;
    p.delta = 1.3;
    p.N = 2.0 * i1 * i2;
    const double g = p.a * p.a / (4.0 * p.omega_c);

    const MatrixXcd one1 = MatrixXcd::Identity(
        static_cast<int>(std::lround(2 * i1)) + 1, static_cast<int>(std::lround(2 * i1)) + 1);
    const int dprod = (static_cast<int>(std::lround(2 * i1)) + 1) *
                      (static_cast<int>(std::lround(2 * i2)) + 1);
    const MatrixXcd idp = MatrixXcd::Identity(dprod, dprod);
    const MatrixXcd i1z = oracle::on_spin1(oracle::spin_z(i1), i2);
    const MatrixXcd i2z = oracle::on_spin2(i1, oracle::spin_z(i2));
    const MatrixXcd p1 = oracle::on_spin1(oracle::spin_plus(i1), i2);
    const MatrixXcd m1 = oracle::on_spin1(oracle::spin_minus(i1), i2);
    const MatrixXcd p2 = oracle::on_spin2(i1, oracle::spin_plus(i2));
    const MatrixXcd m2 = oracle::on_spin2(i1, oracle::spin_minus(i2));
    MatrixXcd hop = MatrixXcd::Zero(dprod, dprod);
    hop += p1 * m1 + m1 * p1;  // i = j = 1
    hop += p2 * m2 + m2 * p2;  // i = j = 2
    hop += p1 * m2 + m1 * p2;  // i = 1, j = 2
    hop += p2 * m1 + m2 * p1;  // i = 2, j = 1

    const MatrixXcd sx_c = oracle::central_in_stored_basis(oracle::central_z_basis_sx());
    const MatrixXcd sz_c = oracle::central_in_stored_basis(oracle::central_z_basis_sz());
    MatrixXcd hfull = oracle::kron(p.Omega * sx_c + p.delta * sz_c, idp);
    hfull += oracle::kron(MatrixXcd::Identity(2, 2),
                          (p.omega_1 - g) * i1z + (p.omega_2 - g) * i2z);
    hfull += oracle::kron(sz_c, p.a * (i1z + i2z) + g * hop);

    // Restrict with identity (x) ladder projection.
    const MatrixXcd proj = oracle::ladder_projector(b);
    const MatrixXcd lift = oracle::kron(MatrixXcd::Identity(2, 2), proj);
    const MatrixXcd hrestr = lift * hfull * lift.adjoint();

    auto h = build_rotating_hamiltonian(b, p);
    CHECK((h - hrestr).cwiseAbs().maxCoeff() < 1e-10);
    (void)one1;
  }
}

TEST_CASE("exchange generator, smallest ladder") {
  auto b = build_basis(0.5, 0.5);
  const double g = 0.25;
  auto h = build_exchange_hamiltonian(b, g);
  REQUIRE(h.rows() == 4);
  // Only |up_x, 0> <-> |down_x, 1> with element g e_0 = g.
  MatrixXcd expect = MatrixXcd::Zero(4, 4);
  expect(2, 1) = g;
  expect(1, 2) = g;
  CHECK((h - expect).cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("exchange generator spectrum is the rung ladder") {
  auto b = build_basis(4.0, 4.0);
  const double g = 1.0;
  auto h = build_exchange_hamiltonian(b, g);
  CHECK((h - h.adjoint()).cwiseAbs().maxCoeff() < 1e-13);
  auto e = ladder_raising_elements(b);
  Eigen::SelfAdjointEigenSolver<MatrixXcd> es(h);
  // Spectrum: +- g e_n for each rung pair plus two unpaired zeros.
  std::vector<double> expect;
  for (int n = 0; n < e.size(); ++n) {
    expect.push_back(-g * e[n]);
    expect.push_back(g * e[n]);
  }
  expect.push_back(0.0);
  expect.push_back(0.0);
  std::sort(expect.begin(), expect.end());
  for (int k = 0; k < h.rows(); ++k) {
    CHECK(es.eigenvalues()[k] == doctest::Approx(expect[k]).epsilon(1e-10));
  }
  // Element bookkeeping: <up_x, n-1| H |down_x, n> = g e_{n-1}.
  for (int n = 1; n < b.dim_bath; ++n) {
    CHECK(std::abs(h(b.dim_bath + n - 1, n)) == doctest::Approx(g * e[n - 1]).epsilon(1e-12));
  }
}

TEST_CASE("resonant rotating generator contains the exchange block") {
  auto b = build_basis(3.0, 3.0);
  auto p = dimensionless_params(5.0, 18.0);
  const double g = 1.0;
  auto h = build_rotating_hamiltonian(b, p);
  const int nb = b.dim_bath;
  // Up-down block of the full generator minus the off-resonant pieces (the
  // diagonal two-body shifts and the counter-rotating raising part) equals
  // the exchange block.
  MatrixXcd block = h.block(nb, 0, nb, nb);
  block -= 0.5 * g * op_flipflop_diagonal(b);
  block -= g * op_ladder_plus(b);
  auto hexc = build_exchange_hamiltonian(b, g);
  CHECK((block - hexc.block(nb, 0, nb, nb)).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("propagator equals the matrix exponential") {
  auto b = build_basis(2.0, 2.0);
  auto p = dimensionless_params(3.0, 8.0);
  auto h = build_rotating_hamiltonian(b, p);
  const double t = 0.37;
  auto u = hermitian_propagator(h, t);
  CHECK((u * u.adjoint() - MatrixXcd::Identity(h.rows(), h.cols()))
            .cwiseAbs().maxCoeff() < 1e-10);
  const MatrixXcd expm = (complexd(0.0, -t) * h).exp();
  CHECK((u - expm).cwiseAbs().maxCoeff() < 1e-9);
}

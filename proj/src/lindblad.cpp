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

#include "spincool/lindblad.hpp"

#include <Eigen/SparseLU>
#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <iostream>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace spincool {

namespace {

void require_well_formed(const LiouvillianSpec& spec) {
  const Eigen::Index d = spec.h.rows();
  if (d < 1 || spec.h.cols() != d) {
    throw std::invalid_argument("liouvillian: Hamiltonian must be square");
  }
  for (const auto& ch : spec.channels) {
    if (ch.rate < 0.0) {
      throw std::invalid_argument("liouvillian: negative channel rate");
    }
    if (ch.op.rows() != d || ch.op.cols() != d) {
      throw std::invalid_argument(
          "liouvillian: collapse operator dimension mismatch");
    }
  }
}

// vec(A X B) = (B^T kron A) vec(X) under column stacking.
MatrixXcd kron_dense(const MatrixXcd& a, const MatrixXcd& b) {
  MatrixXcd out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

// Right-hand side of the master equation acting on the density matrix
// directly; used by the integrator to avoid materializing the d^2 x d^2
// generator.
struct MasterRhs {
  const LiouvillianSpec& spec;
  std::vector<MatrixXcd> scaled_ops;   // sqrt(rate) C
  std::vector<MatrixXcd> normal_ops;   // rate C^dag C

  explicit MasterRhs(const LiouvillianSpec& s) : spec(s) {
    for (const auto& ch : s.channels) {
      scaled_ops.push_back(std::sqrt(ch.rate) * ch.op);
      normal_ops.push_back(ch.rate * (ch.op.adjoint() * ch.op));
    }
  }

  MatrixXcd operator()(const MatrixXcd& rho) const {
    MatrixXcd out = complexd(0.0, -1.0) * (spec.h * rho - rho * spec.h);
    for (size_t k = 0; k < scaled_ops.size(); ++k) {
      out += scaled_ops[k] * rho * scaled_ops[k].adjoint();
      out -= 0.5 * (normal_ops[k] * rho + rho * normal_ops[k]);
    }
    return out;
  }
};

CompositeState finalize_steady(VectorXcd vec_rho, Eigen::Index d) {
  MatrixXcd rho = Eigen::Map<MatrixXcd>(vec_rho.data(), d, d);
  rho = 0.5 * (rho + rho.adjoint()).eval();
  Eigen::SelfAdjointEigenSolver<MatrixXcd> es(rho);
  if (es.info() != Eigen::Success) {
    throw std::runtime_error("steady_state: eigendecomposition failed");
  }
  VectorXd ev = es.eigenvalues();
  const double worst = ev.minCoeff();
  if (worst < -1e-6) {
    // A grossly indefinite solution is still annihilated by the generator, so
    // the residual check upstream cannot flag it. It means the stationary
    // manifold has more than one dimension and the pinned solve picked an
    // arbitrary element of it.
    throw std::runtime_error(
        "steady_state: solution is not positive (eigenvalue " +
        std::to_string(worst) +
        "); the generator has multiple fixed points");
  }
  if (worst < -1e-10) {
    std::cerr << "steady_state: clipping negative eigenvalue " << worst
              << "\n";
  }
  bool clipped = false;
  for (Eigen::Index k = 0; k < ev.size(); ++k) {
    if (ev[k] < 0.0) {
      ev[k] = 0.0;
      clipped = true;
    }
  }
  CompositeState out;
  if (clipped) {
    rho = es.eigenvectors() * ev.asDiagonal() * es.eigenvectors().adjoint();
  }
  out.rho = rho / rho.trace().real();
  return out;
}

}  // namespace

LiouvillianSpec protocol_liouvillian(const LadderBasis& basis,
                                     const PhysicalParams& params) {
  const auto scales = derive_scales(params, basis);
  const MatrixXcd bath_id =
      MatrixXcd::Identity(basis.dim_bath, basis.dim_bath);
  LiouvillianSpec spec;
  spec.h = build_rotating_hamiltonian(basis, params);
  spec.channels.push_back(
      {scales.gamma_op, kron_central_bath(central_lower(), bath_id)});
  if (params.gamma_c > 0.0) {
    spec.channels.push_back(
        {params.gamma_c, kron_central_bath(central_sx(), bath_id)});
  }
  if (params.gamma_b > 0.0) {
    spec.channels.push_back(
        {0.5 * params.gamma_b,
         kron_central_bath(central_identity(), op_i1z(basis))});
    spec.channels.push_back(
        {0.5 * params.gamma_b,
         kron_central_bath(central_identity(), op_i2z(basis))});
  }
  return spec;
}

MatrixXcd build_liouvillian(const LiouvillianSpec& spec) {
  require_well_formed(spec);
  const Eigen::Index d = spec.h.rows();
  const MatrixXcd id = MatrixXcd::Identity(d, d);
  MatrixXcd lve = complexd(0.0, -1.0) * (kron_dense(id, spec.h) -
                                         kron_dense(spec.h.transpose(), id));
  for (const auto& ch : spec.channels) {
    const MatrixXcd c = std::sqrt(ch.rate) * ch.op;
    const MatrixXcd cdc = c.adjoint() * c;
    lve += kron_dense(c.conjugate(), c);
    lve -= 0.5 * (kron_dense(id, cdc) + kron_dense(cdc.transpose(), id));
  }
  return lve;
}

Eigen::SparseMatrix<complexd> build_liouvillian_sparse(
    const LiouvillianSpec& spec) {
  require_well_formed(spec);
  const Eigen::Index d = spec.h.rows();
  std::vector<Eigen::Triplet<complexd>> trips;

  // kron(a, b) entry ((ia*d + ib), (ja*d + jb)) = a(ia,ja) b(ib,jb),
  // emitted only for nonzero dense entries.
  auto add_kron = [&](const MatrixXcd& a, const MatrixXcd& b, complexd w) {
    for (Eigen::Index ia = 0; ia < d; ++ia) {
      for (Eigen::Index ja = 0; ja < d; ++ja) {
        const complexd va = a(ia, ja);
        if (va == complexd(0.0, 0.0)) continue;
        for (Eigen::Index ib = 0; ib < d; ++ib) {
          for (Eigen::Index jb = 0; jb < d; ++jb) {
            const complexd vb = b(ib, jb);
            if (vb == complexd(0.0, 0.0)) continue;
            trips.emplace_back(ia * d + ib, ja * d + jb, w * va * vb);
          }
        }
      }
    }
  };
  auto add_left = [&](const MatrixXcd& m, complexd w) {
    // kron(identity, m)
    for (Eigen::Index blk = 0; blk < d; ++blk) {
      for (Eigen::Index i = 0; i < d; ++i) {
        for (Eigen::Index j = 0; j < d; ++j) {
          const complexd v = m(i, j);
          if (v == complexd(0.0, 0.0)) continue;
          trips.emplace_back(blk * d + i, blk * d + j, w * v);
        }
      }
    }
  };
  auto add_right = [&](const MatrixXcd& m, complexd w) {
    // kron(m^T, identity)
    for (Eigen::Index i = 0; i < d; ++i) {
      for (Eigen::Index j = 0; j < d; ++j) {
        const complexd v = m(j, i);
        if (v == complexd(0.0, 0.0)) continue;
        for (Eigen::Index blk = 0; blk < d; ++blk) {
          trips.emplace_back(i * d + blk, j * d + blk, w * v);
        }
      }
    }
  };

  add_left(spec.h, complexd(0.0, -1.0));
  add_right(spec.h, complexd(0.0, 1.0));
  for (const auto& ch : spec.channels) {
    const MatrixXcd c = std::sqrt(ch.rate) * ch.op;
    const MatrixXcd cdc = c.adjoint() * c;
    add_kron(c.conjugate(), c, complexd(1.0, 0.0));
    add_left(cdc, complexd(-0.5, 0.0));
    add_right(cdc, complexd(-0.5, 0.0));
  }
  Eigen::SparseMatrix<complexd> lve(d * d, d * d);
  lve.setFromTriplets(trips.begin(), trips.end());
  return lve;
}

CompositeState steady_state(const LiouvillianSpec& spec, int dense_threshold) {
  require_well_formed(spec);
  bool pumped = false;
  for (const auto& ch : spec.channels) pumped = pumped || ch.rate > 0.0;
  if (!pumped) {
    throw std::invalid_argument(
        "steady_state: needs at least one dissipative channel");
  }
  const Eigen::Index d = spec.h.rows();
  const Eigen::Index dd = d * d;
  VectorXcd sol(dd);
  double scale = 0.0;
  double residual = 0.0;

  if (dd <= dense_threshold) {
    MatrixXcd lve = build_liouvillian(spec);
    scale = lve.cwiseAbs().maxCoeff();
    MatrixXcd sys = lve;
    sys.row(0).setZero();
    for (Eigen::Index k = 0; k < d; ++k) sys(0, k * (d + 1)) = scale;
    VectorXcd rhs = VectorXcd::Zero(dd);
    rhs[0] = scale;
    sol = sys.partialPivLu().solve(rhs);
    residual = (lve * sol).cwiseAbs().maxCoeff();
  } else {
    Eigen::SparseMatrix<complexd> lve = build_liouvillian_sparse(spec);
    scale = 0.0;
    for (Eigen::Index k = 0; k < lve.outerSize(); ++k) {
      for (Eigen::SparseMatrix<complexd>::InnerIterator it(lve, k); it;
           ++it) {
        scale = std::max(scale, std::abs(it.value()));
      }
    }
    // Rebuild with the first row replaced by the trace constraint.
    std::vector<Eigen::Triplet<complexd>> trips;
    for (Eigen::Index k = 0; k < lve.outerSize(); ++k) {
      for (Eigen::SparseMatrix<complexd>::InnerIterator it(lve, k); it;
           ++it) {
        if (it.row() != 0) trips.emplace_back(it.row(), it.col(), it.value());
      }
    }
    for (Eigen::Index k = 0; k < d; ++k) {
      trips.emplace_back(0, k * (d + 1), complexd(scale, 0.0));
    }
    Eigen::SparseMatrix<complexd> sys(dd, dd);
    sys.setFromTriplets(trips.begin(), trips.end());
    sys.makeCompressed();
    Eigen::SparseLU<Eigen::SparseMatrix<complexd>> lu;
    lu.compute(sys);
    if (lu.info() != Eigen::Success) {
      throw std::runtime_error("steady_state: sparse factorization failed");
    }
    VectorXcd rhs = VectorXcd::Zero(dd);
    rhs[0] = scale;
    sol = lu.solve(rhs);
    residual = (lve * sol).cwiseAbs().maxCoeff();
  }

  if (!(residual <= 1e-8 * scale)) {
    std::ostringstream msg;
    msg << "steady_state: fixed-point residual " << residual
        << " exceeds tolerance; the null space is degenerate or the "
           "dynamics disconnected";
    throw std::runtime_error(msg.str());
  }
  return finalize_steady(std::move(sol), d);
}

std::vector<CompositeState> evolve(const LiouvillianSpec& spec,
                                   const CompositeState& rho0,
                                   const std::vector<double>& t_grid) {
  require_well_formed(spec);
  if (t_grid.empty()) {
    throw std::invalid_argument("evolve: empty time grid");
  }
  for (size_t k = 0; k < t_grid.size(); ++k) {
    if (t_grid[k] < 0.0 || (k > 0 && t_grid[k] <= t_grid[k - 1])) {
      throw std::invalid_argument("evolve: time grid must ascend from >= 0");
    }
  }
  if (rho0.rho.rows() != spec.h.rows()) {
    throw std::invalid_argument("evolve: state dimension mismatch");
  }

  const MasterRhs rhs(spec);
  // Dormand-Prince 5(4) tableau.
  static const double a21 = 1.0 / 5;
  static const double a31 = 3.0 / 40, a32 = 9.0 / 40;
  static const double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
  static const double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187,
                      a53 = 64448.0 / 6561, a54 = -212.0 / 729;
  static const double a61 = 9017.0 / 3168, a62 = -355.0 / 33,
                      a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                      a65 = -5103.0 / 18656;
  static const double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                      b5 = -2187.0 / 6784, b6 = 11.0 / 84;
  static const double e1 = 71.0 / 57600, e3 = -71.0 / 16695,
                      e4 = 71.0 / 1920, e5 = -17253.0 / 339200,
                      e6 = 22.0 / 525, e7 = -1.0 / 40;

  const double rtol = 1e-9;
  const double atol = 1e-12;
  const double t_final = t_grid.back();
  // Initial step from the generator's scale.
  double h_scale = spec.h.cwiseAbs().maxCoeff();
  for (const auto& ch : spec.channels) h_scale = std::max(h_scale, ch.rate);
  double dt = (h_scale > 0.0) ? 0.1 / h_scale
                              : std::max(t_final, 1.0) * 1e-3;

  std::vector<CompositeState> out;
  out.reserve(t_grid.size());
  MatrixXcd y = rho0.rho;
  double t = 0.0;
  size_t next_sample = 0;
  while (next_sample < t_grid.size() && t_grid[next_sample] <= 0.0) {
    out.push_back(CompositeState{y});
    ++next_sample;
  }

  MatrixXcd k1 = rhs(y);
  while (next_sample < t_grid.size()) {
    const double t_target = t_grid[next_sample];
    bool clipped = false;
    double step = dt;
    if (t + step >= t_target) {
      step = t_target - t;
      clipped = true;
    }
    if (step < 1e-14 * std::max(t_final, 1.0)) {
      if (!clipped) {
        throw std::runtime_error("evolve: step size underflow");
      }
      // Target time reached to rounding.
      out.push_back(CompositeState{y});
      ++next_sample;
      continue;
    }

    const MatrixXcd k2 = rhs(y + step * (a21 * k1));
    const MatrixXcd k3 = rhs(y + step * (a31 * k1 + a32 * k2));
    const MatrixXcd k4 = rhs(y + step * (a41 * k1 + a42 * k2 + a43 * k3));
    const MatrixXcd k5 =
        rhs(y + step * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4));
    const MatrixXcd k6 = rhs(y + step * (a61 * k1 + a62 * k2 + a63 * k3 +
                                         a64 * k4 + a65 * k5));
    const MatrixXcd y5 =
        y + step * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
    const MatrixXcd k7 = rhs(y5);
    const MatrixXcd err_mat = step * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 +
                                      e6 * k6 + e7 * k7);
    const double y_norm = std::max(y.cwiseAbs().maxCoeff(),
                                   y5.cwiseAbs().maxCoeff());
    const double err =
        err_mat.cwiseAbs().maxCoeff() / (atol + rtol * y_norm);

    if (err <= 1.0) {
      t += step;
      y = y5;
      k1 = k7;  // first-same-as-last
      if (clipped && std::abs(t - t_target) <= 1e-12 * std::max(t_final, 1.0)) {
        out.push_back(CompositeState{y});
        ++next_sample;
      }
    }
    const double grow = (err > 0.0)
                            ? 0.9 * std::pow(err, -0.2)
                            : 5.0;
    dt = step * std::clamp(grow, 0.2, 5.0);
    if (dt < 1e-14 * std::max(t_final, 1.0)) {
      throw std::runtime_error("evolve: step size underflow");
    }
  }
  return out;
}

std::vector<ContinuousPoint> steady_impurity_sweep(
    const LadderBasis& basis, const PhysicalParams& params,
    const std::vector<double>& kappa_grid, int threads) {
  if (kappa_grid.empty()) {
    throw std::invalid_argument("steady_impurity_sweep: empty kappa grid");
  }
  const int n = static_cast<int>(kappa_grid.size());
  std::vector<ContinuousPoint> out(n);
  std::atomic<int> next{0};
  std::exception_ptr first_error;
  std::mutex error_lock;

  auto worker = [&]() {
    for (;;) {
      const int k = next.fetch_add(1);
      if (k >= n) return;
      try {
        PhysicalParams p = params;
        const double delta_omega =
            kappa_grid[k] * p.N * p.a * p.a / p.omega_c;
        p.omega_1 = p.omega_2 + delta_omega;
        p.Omega = delta_omega;
        p.delta = 0.0;
        const auto start = std::chrono::steady_clock::now();
        auto spec = protocol_liouvillian(basis, p);
        auto rho_ss = steady_state(spec);
        const auto stop = std::chrono::steady_clock::now();
        auto rho_b = bath_density(rho_ss, basis);
        out[k].kappa = kappa_grid[k];
        out[k].impurity = impurity(rho_b);
        out[k].fidelity_n0 = rho_b(0, 0).real();
        out[k].dense = basis.dim_total * basis.dim_total <= 40000;
        out[k].wall_time_s =
            std::chrono::duration<double>(stop - start).count();
      } catch (...) {
        std::lock_guard<std::mutex> hold(error_lock);
        if (!first_error) first_error = std::current_exception();
        return;
      }
    }
  };

  int n_threads = threads > 0
                      ? threads
                      : static_cast<int>(std::thread::hardware_concurrency());
  n_threads = std::clamp(n_threads, 1, n);
  std::vector<std::thread> pool;
  pool.reserve(n_threads);
  for (int t = 0; t < n_threads; ++t) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
  if (first_error) std::rethrow_exception(first_error);
  return out;
}

}  // namespace spincool

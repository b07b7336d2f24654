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

#include "spincool/protocol.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace spincool {

namespace {

constexpr int kSubstepSamples = 100;

void check_unitarity(const MatrixXcd& u) {
  const double defect =
      (u.adjoint() * u - MatrixXcd::Identity(u.rows(), u.cols()))
          .cwiseAbs()
          .maxCoeff();
  if (defect > 1e-10) {
    std::ostringstream msg;
    msg << "run_stage2: propagator unitarity defect " << defect
        << " exceeds 1e-10";
    throw std::runtime_error(msg.str());
  }
}

}  // namespace

ProtocolRun run_stage2(const LadderBasis& basis, const PhysicalParams& params,
                       int n_iterations, bool record_substeps) {
  if (n_iterations < 1) {
    throw std::invalid_argument("run_stage2: n_iterations must be positive");
  }
  ProtocolRun run;
  run.config = ProtocolConfig{basis, params, n_iterations, record_substeps};
  run.scales = derive_scales(params, basis);

  const MatrixXcd h = build_rotating_hamiltonian(basis, params);
  const MatrixXcd u = hermitian_propagator(h, run.scales.tau0);
  check_unitarity(u);

  CompositeState state = thermal_state(basis);
  run.series.reserve(n_iterations + 1);
  run.series.push_back(measure(state, basis));

  if (record_substeps) {
    // Fine sampling of the central spin inside the first window, before
    // any reset has acted.
    const double dt = run.scales.tau0 / kSubstepSamples;
    const MatrixXcd u_step = hermitian_propagator(h, dt);
    check_unitarity(u_step);
    CompositeState fine = state;
    const MatrixXcd sx_op = kron_central_bath(
        central_sx(), MatrixXcd::Identity(basis.dim_bath, basis.dim_bath));
    run.substeps.reserve(kSubstepSamples);
    for (int k = 0; k < kSubstepSamples; ++k) {
      run.substeps.push_back(
          SubstepSample{k * dt, (sx_op * fine.rho).real().trace()});
      fine.rho = u_step * fine.rho * u_step.adjoint();
    }
  }

  for (int k = 0; k < n_iterations; ++k) {
    state.rho = u * state.rho * u.adjoint();
    run.series.push_back(measure(state, basis));
    state = reset_map(state, basis);
  }
  run.final_state = state;

  // Long propagator products are granted a larger drift budget than a
  // freshly constructed state.
  auto defects = state_defects(state);
  if (!defects.ok(1e-10, 1e-10)) {
    std::ostringstream msg;
    msg << "run_stage2: state drifted out of the density-matrix set"
        << " (trace defect " << defects.trace << ", negativity "
        << defects.negativity << ")";
    throw std::runtime_error(msg.str());
  }

  try {
    run.converged_at = static_cast<int>(std::lround(detect_convergence(run)));
  } catch (const std::runtime_error&) {
    run.converged_at = -1;
  }
  return run;
}

SteadyStats steady_stats(const ProtocolRun& run) {
  const int m = static_cast<int>(run.series.size());
  if (m < 2) {
    throw std::invalid_argument("steady_stats: series too short");
  }
  SteadyStats stats;
  stats.window = std::max(2, m / 10);
  double lo = 1e300;
  double hi = -1e300;
  double sum = 0.0;
  for (int k = m - stats.window; k < m; ++k) {
    const double eps = run.series[k].impurity;
    lo = std::min(lo, eps);
    hi = std::max(hi, eps);
    sum += eps;
  }
  stats.impurity_mean = sum / stats.window;
  stats.impurity_ptp = hi - lo;
  return stats;
}

double detect_convergence(const ProtocolRun& run) {
  const auto stats = steady_stats(run);
  const double excess0 = run.series[0].impurity - stats.impurity_mean;
  // A constant series leaves an excess at the rounding level of the
  // trailing mean; guard with a relative threshold.
  const double resolvable =
      1e-9 * std::max(std::abs(run.series[0].impurity), stats.impurity_mean);
  if (!(excess0 > resolvable)) {
    throw std::runtime_error("detect_convergence: impurity series does not decay");
  }
  // Fit only the cleanly decaying head: stop where the excess falls into
  // the limit-cycle ripple or below a fixed fraction of its start.
  const double floor_value =
      std::max(2.0 * stats.impurity_ptp, 1e-3 * excess0);
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  int count = 0;
  for (int k = 0; k < static_cast<int>(run.series.size()); ++k) {
    const double excess = run.series[k].impurity - stats.impurity_mean;
    if (!(excess > floor_value)) break;
    const double x = k;
    const double y = std::log(excess);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    ++count;
  }
  if (count < 4) {
    throw std::runtime_error(
        "detect_convergence: fewer than four points above the fit floor");
  }
  const double slope = (count * sxy - sx * sy) / (count * sxx - sx * sx);
  if (!(slope < 0.0)) {
    throw std::runtime_error("detect_convergence: fitted exponent is not decaying");
  }
  return -3.0 / slope;
}

std::vector<KappaPoint> sweep_kappa(const LadderBasis& basis,
                                    const PhysicalParams& params,
                                    const std::vector<double>& kappa_grid,
                                    int n_iterations, int threads) {
  if (kappa_grid.empty()) {
    throw std::invalid_argument("sweep_kappa: empty kappa grid");
  }
  if (n_iterations < 1) {
    // Relaxation takes of order 8 I1 I2 iterations; leave generous margin
    // for the fit window.
    n_iterations =
        std::max(64, static_cast<int>(std::lround(24.0 * basis.I1 * basis.I2)));
  }
  const int n = static_cast<int>(kappa_grid.size());
  std::vector<KappaPoint> out(n);
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
        auto run = run_stage2(basis, p, n_iterations);
        auto stats = steady_stats(run);
        out[k].kappa = kappa_grid[k];
        out[k].impurity = stats.impurity_mean;
        out[k].impurity_ptp = stats.impurity_ptp;
        out[k].t_c = detect_convergence(run) * run.scales.tau0;
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

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

#include "spincool/singlet.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>

namespace spincool {

namespace {

constexpr double kPi = 0.5 * kTwoPi;

void require_equal_spins(const LadderBasis& b, const char* who) {
  if (b.I1 != b.I2) {
    throw std::invalid_argument(std::string(who) + ": requires I1 = I2");
  }
}

double fold_two_pi(double x) {
  double r = std::fmod(x, kTwoPi);
  if (r < 0.0) r += kTwoPi;
  return r;
}

// |down_x> (x) singlet as a composite vector; the up_x block is empty.
VectorXcd composite_singlet(const LadderBasis& b) {
  VectorXcd t = VectorXcd::Zero(b.dim_total);
  t.head(b.dim_bath) = singlet_bath_vector(b);
  return t;
}

}  // namespace

MatrixXcd z_gate(double phi, const LadderBasis& b) {
  const double c = std::cos(0.5 * phi);
  const complexd ms(0.0, -std::sin(0.5 * phi));
  MatrixXcd central(2, 2);
  central << c, ms, ms, c;
  return kron_central_bath(central,
                           MatrixXcd::Identity(b.dim_bath, b.dim_bath));
}

MatrixXcd exchange_gate(double tau, const LadderBasis& b, GateModel model) {
  const int d = b.dim_bath;
  MatrixXcd u = MatrixXcd::Identity(b.dim_total, b.dim_total);
  if (model == GateModel::simplified) {
    if (std::abs(tau - 0.5 * kPi) > 1e-9) {
      throw std::invalid_argument(
          "exchange_gate: simplified model is defined only at tau = pi/2");
    }
    for (int n = 0; n + 1 < d; ++n) {
      const int up = d + n;
      const int down = n + 1;
      u(up, up) = 0.0;
      u(down, down) = 0.0;
      u(up, down) = complexd(0.0, -1.0);
      u(down, up) = complexd(0.0, -1.0);
    }
    return u;
  }
  const VectorXd e = ladder_raising_elements(b);
  for (int n = 0; n + 1 < d; ++n) {
    const int up = d + n;
    const int down = n + 1;
    const double theta = e[n] * tau;
    u(up, up) = std::cos(theta);
    u(down, down) = std::cos(theta);
    u(up, down) = complexd(0.0, -std::sin(theta));
    u(down, up) = complexd(0.0, -std::sin(theta));
  }
  return u;
}

GateSequence ideal_sequence(int K) {
  if (K < 1 || K > 20) {
    throw std::invalid_argument("ideal_sequence: K must be in [1, 20]");
  }
  GateSequence seq;
  seq.model = GateModel::simplified;
  for (int j = 1; j <= K; ++j) {
    seq.steps.push_back({0.5 * kPi, 0.5 * kPi});
    const int repeats = (1 << (j - 1)) - 1;
    for (int r = 0; r < repeats; ++r) {
      seq.steps.push_back({kPi, 0.5 * kPi});
    }
  }
  return seq;
}

int block_gate_count(int j) {
  if (j < 0 || j > 20) {
    throw std::invalid_argument("block_gate_count: j must be in [0, 20]");
  }
  return 2 * ((1 << j) - 1);
}

GateSequence init_guess(int K, const LadderBasis& b) {
  if (K < 1 || (1 << K) != b.dim_bath) {
    throw std::invalid_argument("init_guess: ladder must have 2^K rungs");
  }
  require_equal_spins(b, "init_guess");
  GateSequence seq = ideal_sequence(K);
  seq.model = GateModel::exact;
  const VectorXd e = ladder_raising_elements(b);
  // One step per pair: step j carries the new rung j + 1 into the
  // superposition, so its pi-time follows that pair's coupling.
  for (std::size_t j = 0; j < seq.steps.size(); ++j) {
    seq.steps[j].tau = 0.5 * kPi / e[static_cast<Eigen::Index>(j)];
  }
  return seq;
}

int padded_block_count(const LadderBasis& b) {
  int K = 1;
  while ((1 << K) < b.dim_bath) ++K;
  return K;
}

GateSequence padded_guess(const LadderBasis& b) {
  require_equal_spins(b, "padded_guess");
  GateSequence seq = ideal_sequence(padded_block_count(b));
  seq.model = GateModel::exact;
  const VectorXd e = ladder_raising_elements(b);
  if (static_cast<Eigen::Index>(seq.steps.size()) > e.size()) {
    seq.steps.resize(static_cast<std::size_t>(e.size()));
  }
  for (std::size_t j = 0; j < seq.steps.size(); ++j) {
    seq.steps[j].tau = 0.5 * kPi / e[static_cast<Eigen::Index>(j)];
  }
  return seq;
}

VectorXcd sequence_initial_state(const LadderBasis& b) {
  VectorXcd psi = VectorXcd::Zero(b.dim_total);
  psi[0] = 1.0;
  return psi;
}

std::pair<VectorXcd, SequenceDiagnostics> apply_sequence(
    const GateSequence& seq, const LadderBasis& b) {
  return apply_sequence(seq, b, sequence_initial_state(b));
}

std::pair<VectorXcd, SequenceDiagnostics> apply_sequence(
    const GateSequence& seq, const LadderBasis& b, const VectorXcd& initial) {
  require_equal_spins(b, "apply_sequence");
  if (initial.size() != b.dim_total) {
    throw std::invalid_argument("apply_sequence: initial state dimension");
  }
  const MatrixXcd chi = singlet_bath_projector(b);
  const MatrixXcd isq_op =
      kron_central_bath(central_identity(), op_i_squared(b));
  const VectorXcd target = composite_singlet(b);

  SequenceDiagnostics diag;
  const std::size_t gates = 2 * seq.steps.size();
  diag.trace_dist.reserve(gates);
  diag.i_sq.reserve(gates);
  diag.singlet_overlap.reserve(gates);

  VectorXcd psi = initial;
  auto record = [&](const VectorXcd& v) {
    diag.trace_dist.push_back(trace_distance(bath_density_pure(v, b), chi));
    diag.i_sq.push_back(v.dot(isq_op * v).real());
    diag.singlet_overlap.push_back(std::norm(target.dot(v)));
  };
  for (const GateStep& st : seq.steps) {
    psi = (z_gate(st.phi, b) * psi).eval();
    record(psi);
    psi = (exchange_gate(st.tau, b, seq.model) * psi).eval();
    record(psi);
  }
  return {std::move(psi), std::move(diag)};
}

double hs_cost(const MatrixXcd& rho_b, const MatrixXcd& target) {
  if (rho_b.rows() != target.rows() || rho_b.cols() != target.cols()) {
    throw std::invalid_argument("hs_cost: dimension mismatch");
  }
  return (rho_b - target).squaredNorm();
}

namespace {

struct Evaluation {
  double cost = 0.0;
  double trace_dist = 0.0;
  double i_sq = 0.0;
  VectorXd grad;  // application order {phi_0, tau_0, phi_1, tau_1, ...}
};

// One forward sweep to the final state, one backward sweep for the exact
// gradient: with A = 1 (x) (rho_b - target), dC/dv_i = 4 Re <l_i|-iX_i|s_i>
// where s_i is the state after gate i and l_i carries A|psi> back through
// the later gates.
Evaluation evaluate_with_gradient(const GateSequence& seq,
                                  const LadderBasis& b,
                                  const MatrixXcd& target) {
  if (seq.model != GateModel::exact) {
    throw std::invalid_argument(
        "gradient evaluation: exact gate model required");
  }
  if (target.rows() != b.dim_bath || target.cols() != b.dim_bath) {
    throw std::invalid_argument("gradient evaluation: target dimension");
  }
  const std::size_t n_gates = 2 * seq.steps.size();
  std::vector<MatrixXcd> gate(n_gates);
  for (std::size_t j = 0; j < seq.steps.size(); ++j) {
    gate[2 * j] = z_gate(seq.steps[j].phi, b);
    gate[2 * j + 1] = exchange_gate(seq.steps[j].tau, b, GateModel::exact);
  }
  std::vector<VectorXcd> state(n_gates + 1);
  state[0] = sequence_initial_state(b);
  for (std::size_t i = 0; i < n_gates; ++i) {
    state[i + 1] = gate[i] * state[i];
  }

  const MatrixXcd rho_b = bath_density_pure(state[n_gates], b);
  const MatrixXcd isq_op =
      kron_central_bath(central_identity(), op_i_squared(b));

  Evaluation out;
  out.cost = hs_cost(rho_b, target);
  out.trace_dist = trace_distance(rho_b, target);
  out.i_sq = state[n_gates].dot(isq_op * state[n_gates]).real();
  out.grad = VectorXd::Zero(static_cast<Eigen::Index>(n_gates));

  const MatrixXcd x_z = kron_central_bath(
      central_sz(), MatrixXcd::Identity(b.dim_bath, b.dim_bath));
  const MatrixXcd x_exc = build_exchange_hamiltonian(b, 1.0);
  const MatrixXcd a_op =
      kron_central_bath(central_identity(), MatrixXcd(rho_b - target));

  VectorXcd lambda = a_op * state[n_gates];
  const complexd mi(0.0, -1.0);
  for (std::size_t i = n_gates; i-- > 0;) {
    const MatrixXcd& x = (i % 2 == 0) ? x_z : x_exc;
    out.grad[static_cast<Eigen::Index>(i)] =
        4.0 * lambda.dot(mi * (x * state[i + 1])).real();
    lambda = (gate[i].adjoint() * lambda).eval();
  }
  return out;
}

}  // namespace

VectorXd analytic_gradient(const GateSequence& seq, const LadderBasis& b,
                           const MatrixXcd& target) {
  return evaluate_with_gradient(seq, b, target).grad;
}

CostReport rmsprop_optimize(GateSequence seq, const OptimizerConfig& cfg,
                            const LadderBasis& b, const MatrixXcd& target) {
  if (seq.model != GateModel::exact) {
    throw std::invalid_argument("rmsprop_optimize: exact gate model required");
  }
  if (!(cfg.beta > 0.0 && cfg.beta < 1.0) || cfg.zeta < 0.0 ||
      cfg.xi <= 0.0 || cfg.max_epochs < 0) {
    throw std::invalid_argument("rmsprop_optimize: bad hyperparameters");
  }
  const Eigen::Index n_par = static_cast<Eigen::Index>(2 * seq.steps.size());
  VectorXd mean_sq = VectorXd::Zero(n_par);

  // Per-step angle preconditioner: d(cost)/d(angle) = d(cost)/d(tau) / e_j.
  const VectorXd e = ladder_raising_elements(b);
  VectorXd tau_scale = VectorXd::Ones(static_cast<Eigen::Index>(
      seq.steps.size()));
  for (Eigen::Index j = 0; j < tau_scale.size(); ++j) {
    tau_scale[j] = e[std::min(j, e.size() - 1)];
  }

  CostReport report;
  report.cost_trace.reserve(cfg.max_epochs + 1);
  GateSequence best = seq;
  bool stopped_early = false;
  auto track_best = [&](const Evaluation& ev, int epoch) {
    if (report.cost_trace.empty() || ev.cost < report.best_cost) {
      report.best_cost = ev.cost;
      report.best_trace_dist = ev.trace_dist;
      report.best_epoch = epoch;
      best = seq;
    }
  };
  for (int epoch = 0; epoch < cfg.max_epochs; ++epoch) {
    const Evaluation ev = evaluate_with_gradient(seq, b, target);
    track_best(ev, epoch);
    report.cost_trace.push_back(ev.cost);
    report.trace_dist_trace.push_back(ev.trace_dist);
    report.i_sq_trace.push_back(ev.i_sq);
    if (!ev.grad.allFinite()) {
      throw std::runtime_error(
          "rmsprop_optimize: non-finite gradient at epoch " +
          std::to_string(epoch) + " (cost " + std::to_string(ev.cost) + ")");
    }
    if (cfg.cost_tol > 0.0 && ev.cost <= cfg.cost_tol) {
      stopped_early = true;
      break;
    }
    for (std::size_t j = 0; j < seq.steps.size(); ++j) {
      const Eigen::Index ip = static_cast<Eigen::Index>(2 * j);
      const Eigen::Index it = ip + 1;
      const double scale = tau_scale[static_cast<Eigen::Index>(j)];
      const double g_phi = ev.grad[ip];
      const double g_ang = ev.grad[it] / scale;
      mean_sq[ip] = cfg.beta * mean_sq[ip] + (1.0 - cfg.beta) * g_phi * g_phi;
      mean_sq[it] = cfg.beta * mean_sq[it] + (1.0 - cfg.beta) * g_ang * g_ang;
      seq.steps[j].phi -=
          cfg.zeta / std::sqrt(cfg.xi + mean_sq[ip]) * g_phi;
      seq.steps[j].tau -=
          cfg.zeta / std::sqrt(cfg.xi + mean_sq[it]) * g_ang / scale;
    }
  }
  if (!stopped_early) {
    const Evaluation ev = evaluate_with_gradient(seq, b, target);
    track_best(ev, cfg.max_epochs);
    report.cost_trace.push_back(ev.cost);
    report.trace_dist_trace.push_back(ev.trace_dist);
    report.i_sq_trace.push_back(ev.i_sq);
  }
  report.sequence = std::move(best);
  return report;
}

GateSequence canonicalized(const GateSequence& seq) {
  GateSequence out = seq;
  for (GateStep& st : out.steps) {
    st.phi = fold_two_pi(st.phi);
    st.tau = fold_two_pi(st.tau);
  }
  return out;
}

double refocus_overlap(const VectorXcd& psi, const LadderBasis& b,
                       double delta_omega, double t) {
  require_equal_spins(b, "refocus_overlap");
  if (psi.size() != b.dim_total) {
    throw std::invalid_argument("refocus_overlap: state dimension");
  }
  const VectorXcd s = singlet_bath_vector(b);
  complexd overlap = 0.0;
  for (int n = 0; n < b.dim_bath; ++n) {
    const complexd phase = std::exp(complexd(0.0, t * n * delta_omega));
    overlap += std::conj(s[n]) * phase * psi[n];
  }
  return std::norm(overlap);
}

}  // namespace spincool

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

#include "spincool/rate_model.hpp"

#include <cmath>
#include <stdexcept>

namespace spincool {

namespace {

// Minimal double-double arithmetic (error-free transforms). Only what the
// stationary recursion needs: the subtraction there cancels to the level of
// the smallest populations and plain doubles would inject O(1e-16 p_0) noise
// into every later rung.
struct DD {
  double hi = 0.0;
  double lo = 0.0;
};

DD two_sum(double a, double b) {
  const double s = a + b;
  const double bb = s - a;
  return {s, (a - (s - bb)) + (b - bb)};
}

DD quick_sum(double a, double b) {  // requires |a| >= |b|
  const double s = a + b;
  return {s, b - (s - a)};
}

DD two_prod(double a, double b) {
  const double p = a * b;
  return {p, std::fma(a, b, -p)};
}

DD add(const DD& a, const DD& b) {
  DD s = two_sum(a.hi, b.hi);
  s.lo += a.lo + b.lo;
  return quick_sum(s.hi, s.lo);
}

DD sub(const DD& a, const DD& b) { return add(a, {-b.hi, -b.lo}); }

DD mul(const DD& a, const DD& b) {
  DD p = two_prod(a.hi, b.hi);
  p.lo += a.hi * b.lo + a.lo * b.hi;
  return quick_sum(p.hi, p.lo);
}

DD div(const DD& a, const DD& b) {
  const double q1 = a.hi / b.hi;
  DD r = sub(a, mul({q1, 0.0}, b));
  const double q2 = r.hi / b.hi;
  r = sub(r, mul({q2, 0.0}, b));
  const double q3 = r.hi / b.hi;
  return add(quick_sum(q1, q2), {q3, 0.0});
}

void require_valid(const RateParams& p) {
  const double twoI = 2.0 * p.I;
  if (!(p.I > 0.0) || std::abs(twoI - std::round(twoI)) > 1e-9) {
    throw std::invalid_argument("rate_model: I must be a positive half-integer");
  }
  if (!(p.g > 0.0)) throw std::invalid_argument("rate_model: g must be positive");
  if (!(p.gamma_op > 0.0)) throw std::invalid_argument("rate_model: gamma_op must be positive");
  if (p.gamma_d < 0.0) throw std::invalid_argument("rate_model: gamma_d must be non-negative");
}

}  // namespace

RateParams rate_params_from(const DerivedScales& s, double I) {
  RateParams p;
  p.I = I;
  p.g = s.g;
  p.delta_omega = s.delta_omega;
  p.Omega = s.delta_omega;
  p.gamma_op = s.gamma_op;
  p.gamma_d = s.gamma_d;
  return p;
}

LadderRates scattering_rates(const RateParams& p) {
  require_valid(p);
  const int rungs = static_cast<int>(std::lround(2.0 * p.I)) + 1;
  const double gp = p.gamma_prime();
  const double xdenom = p.gamma_op * gp;
  LadderRates r;
  r.up = VectorXd::Zero(rungs);
  r.down = VectorXd::Zero(rungs);
  const double d_minus = p.Omega - p.delta_omega;
  const double d_plus = p.Omega + p.delta_omega;
  for (int n = 0; n < rungs; ++n) {
    const double a_up = p.g * (2.0 * p.I - n) * (n + 1.0);
    const double a_dn = p.g * (2.0 * p.I - n + 1.0) * n;
    const double x_up = a_up * a_up / xdenom;
    const double x_dn = a_dn * a_dn / xdenom;
    r.up[n] = 0.5 * p.gamma_op * x_up /
              (1.0 + x_up + (d_plus / gp) * (d_plus / gp));
    r.down[n] = 0.5 * p.gamma_op * x_dn /
                (1.0 + x_dn + (d_minus / gp) * (d_minus / gp));
  }
  r.up[rungs - 1] = 0.0;  // exact boundary closure
  r.down[0] = 0.0;
  return r;
}

VectorXd steady_populations(const RateParams& p) {
  const LadderRates r = scattering_rates(p);
  const int rungs = static_cast<int>(r.up.size());
  std::vector<DD> pop(rungs);
  pop[0] = {1.0, 0.0};
  if (rungs > 1) {
    pop[1] = div({r.up[0], 0.0}, {r.down[1], 0.0});
  }
  for (int n = 0; n + 2 < rungs; ++n) {
    const DD lead = div({r.down[n + 1] + r.up[n + 1], 0.0}, {r.down[n + 2], 0.0});
    const DD back = div({r.up[n], 0.0}, {r.down[n + 2], 0.0});
    pop[n + 2] = sub(mul(lead, pop[n + 1]), mul(back, pop[n]));
  }
  DD total = {0.0, 0.0};
  for (const DD& q : pop) total = add(total, q);
  VectorXd out(rungs);
  for (int n = 0; n < rungs; ++n) out[n] = div(pop[n], total).hi;
  return out;
}

double steady_impurity_from(const VectorXd& populations) {
  return 1.0 - populations.squaredNorm();
}

double steady_impurity(const RateParams& p) {
  return steady_impurity_from(steady_populations(p));
}

Eigen::MatrixXd build_lambda(const RateParams& p) {
  const LadderRates r = scattering_rates(p);
  const int rungs = static_cast<int>(r.up.size());
  Eigen::MatrixXd lam = Eigen::MatrixXd::Zero(rungs, rungs);
  for (int n = 0; n < rungs; ++n) {
    lam(n, n) = -(r.up[n] + r.down[n]);
    if (n + 1 < rungs) lam(n + 1, n) = r.up[n];
    if (n > 0) lam(n - 1, n) = r.down[n];
  }
  return lam;
}

RelaxationSpectrum relaxation_spectrum(const RateParams& p) {
  const LadderRates r = scattering_rates(p);
  const int rungs = static_cast<int>(r.up.size());
  VectorXd diag(rungs), sub(rungs - 1);
  for (int n = 0; n < rungs; ++n) diag[n] = -(r.up[n] + r.down[n]);
  for (int n = 0; n + 1 < rungs; ++n) sub[n] = std::sqrt(r.up[n] * r.down[n + 1]);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
  es.computeFromTridiagonal(diag, sub, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) {
    throw std::runtime_error("relaxation_spectrum: tridiagonal eigensolve failed");
  }
  RelaxationSpectrum out;
  out.eigenvalues = es.eigenvalues();
  if (rungs < 2) throw std::invalid_argument("relaxation_spectrum: need at least two rungs");
  out.lambda_1 = out.eigenvalues[rungs - 2];
  out.t_c = kTwoPi / std::abs(out.lambda_1);
  return out;
}

double analytic_impurity_two_level(const RateParams& p) {
  require_valid(p);
  const double alpha = 2.0 * p.g * p.I;
  const double gp = p.gamma_prime();
  const double w = 4.0 * p.delta_omega * p.delta_omega /
                   (p.gamma_op * gp + alpha * alpha) * (p.gamma_op / gp);
  return 2.0 / (1.0 + w);
}

double analytic_impurity_thermodynamic(double kappa, double gamma_d_over_gamma_op) {
  const double damp = 1.0 + 2.0 * gamma_d_over_gamma_op;
  return 2.0 / (1.0 + 64.0 * kappa * kappa / (damp * damp));
}

std::vector<DetuningPoint> detuning_scan(const RateParams& base,
                                         const VectorXd& omegas) {
  std::vector<DetuningPoint> out;
  out.reserve(omegas.size());
  for (Eigen::Index k = 0; k < omegas.size(); ++k) {
    RateParams p = base;
    p.Omega = omegas[k];
    out.push_back({omegas[k], steady_impurity(p)});
  }
  return out;
}

double resonance_fwhm(const RateParams& base, const VectorXd& omegas) {
  const auto scan = detuning_scan(base, omegas);
  const int n = static_cast<int>(scan.size());
  if (n < 5) throw std::invalid_argument("resonance_fwhm: grid too small");
  int peak = 0;
  double best = -1.0;
  for (int k = 0; k < n; ++k) {
    const double f = 1.0 / scan[k].impurity;
    if (f > best) {
      best = f;
      peak = k;
    }
  }
  if (peak == 0 || peak == n - 1) {
    throw std::invalid_argument("resonance_fwhm: peak touches the grid edge");
  }
  const double half = 0.5 * best;
  auto crossing = [&](int from, int step) -> double {
    for (int k = from; k + step >= 0 && k + step < n; k += step) {
      const double f0 = 1.0 / scan[k].impurity;
      const double f1 = 1.0 / scan[k + step].impurity;
      if ((f0 - half) * (f1 - half) <= 0.0) {
        const double t = (half - f0) / (f1 - f0);
        return scan[k].Omega + t * (scan[k + step].Omega - scan[k].Omega);
      }
    }
    throw std::invalid_argument("resonance_fwhm: half maximum not bracketed by the grid");
  };
  const double left = crossing(peak, -1);
  const double right = crossing(peak, +1);
  return right - left;
}

std::vector<DephasingPoint> dephasing_scan(const RateParams& base,
                                           const VectorXd& norm_dephasing) {
  std::vector<DephasingPoint> out;
  out.reserve(norm_dephasing.size());
  for (Eigen::Index k = 0; k < norm_dephasing.size(); ++k) {
    RateParams p = base;
    p.gamma_d = norm_dephasing[k] * base.gamma_op;
    DephasingPoint pt;
    pt.norm_dephasing = norm_dephasing[k];
    pt.impurity = steady_impurity(p);
    pt.t_c = relaxation_spectrum(p).t_c;
    out.push_back(pt);
  }
  return out;
}

}  // namespace spincool

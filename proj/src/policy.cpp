// Copyright 2026 The Centripetal Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "centripetal/policy.hpp"

#include <cmath>
#include <set>
#include <sstream>

#include "centripetal/kernels.hpp"

namespace centripetal {

PrimitiveValues apply_shift(const PrimitiveValues& v,
                            const PrimitiveShift& shift) {
  PrimitiveValues out = v;
  out.t += shift.delta_t;
  out.kappa += shift.delta_kappa;
  out.F += shift.delta_F;
  out.c += shift.delta_c;
  if (!(out.t > 0.0) || !(out.kappa > 0.0)) {
    std::ostringstream os;
    os << "shift rejected: post-shift t=" << out.t << ", kappa=" << out.kappa
       << " must both be > 0";
    throw ShiftRejected(os.str());
  }
  if (!std::isfinite(out.F) || !std::isfinite(out.c)) {
    throw ShiftRejected("shift rejected: non-finite post-shift primitives");
  }
  return out;
}

ScreenVerdict merger_screen(const CapabilityProfile& profile, double A,
                            const PrimitiveShift& shift, double delta_bar_M,
                            double eps_bar) {
  if (!(eps_bar > 0.0)) {
    throw ArgumentError("merger_screen: eps_bar must be > 0");
  }
  if (!(delta_bar_M >= 0.0)) {
    throw ArgumentError("merger_screen: delta_bar_M must be >= 0");
  }
  const PrimitiveValues pre = profile.eval(A);
  const PrimitiveValues post = apply_shift(pre, shift);

  ScreenVerdict v;
  v.M_pre = conduct_statistic(pre.t, pre.kappa);
  v.M_post = conduct_statistic(post.t, post.kappa);
  v.V_pre = v.M_pre / 4.0 - pre.F;
  v.V_post = v.M_post / 4.0 - post.F;
  v.condition_i = v.M_post >= v.M_pre - delta_bar_M;
  v.condition_ii = v.V_post >= eps_bar;
  v.approve = v.condition_i && v.condition_ii;

  v.delta_M_exact = v.M_post - v.M_pre;
  v.delta_V_exact = v.delta_M_exact / 4.0 - shift.delta_F;

  const double t = pre.t;
  const double k = pre.kappa;
  v.delta_M_first_order =
      (2.0 * t / k) * shift.delta_t - (t * t / (k * k)) * shift.delta_kappa;
  v.delta_V_first_order = v.delta_M_first_order / 4.0 - shift.delta_F;
  return v;
}

namespace {

MarketState state_of(const PrimitiveValues& v) {
  const EquilibriumPoint e = equilibrium_from_primitives(v);
  MarketState s;
  s.M = conduct_statistic(v.t, v.kappa);
  s.V = s.M / 4.0 - v.F;
  s.d_star = e.d_star;
  s.p_star = e.p_star;
  s.profit = e.profit;
  return s;
}

}  // namespace

RemedyReport remedy_counterfactual(const CapabilityProfile& profile, double A,
                                   const PrimitiveShift& shift,
                                   std::optional<Interval> threshold_search,
                                   double tol_A) {
  const PrimitiveValues pre = profile.eval(A);
  const PrimitiveValues post = apply_shift(pre, shift);

  RemedyReport r;
  r.pre = state_of(pre);
  r.post = state_of(post);

  const double t = pre.t;
  const double k = pre.kappa;
  r.attribution.dV_dF = -1.0;
  r.attribution.dd_dt = 1.0 / k;
  r.attribution.dp_dt = 2.0 * t / k;
  r.attribution.dd_dkappa = -t / (k * k);
  r.attribution.dM_dt = 2.0 * t / k;
  r.attribution.dM_dkappa = -t * t / (k * k);

  if (threshold_search) {
    r.threshold_pre = entry_threshold(profile, *threshold_search, tol_A);
    const CapabilityProfile shifted = profile.with_offsets(
        {shift.delta_t, shift.delta_kappa, shift.delta_c, shift.delta_F});
    r.threshold_post = entry_threshold(shifted, *threshold_search, tol_A);
  }
  return r;
}

EstimationResult estimate_primitives(const EstimationInputs& inputs,
                                     std::optional<double> kappa_known) {
  if (!(inputs.cross_price_slope > 0.0) ||
      !std::isfinite(inputs.cross_price_slope)) {
    throw ArgumentError("estimate_primitives: cross-price slope must be > 0");
  }
  if (!(inputs.amortization_base > 0.0)) {
    throw ArgumentError("estimate_primitives: amortization base must be > 0");
  }

  EstimationResult r;
  if (kappa_known) {
    r.kappa_hat = *kappa_known;
  } else {
    if (inputs.probes.empty()) {
      throw ArgumentError("estimate_primitives: no originality probes");
    }
    std::set<double> seen;
    double sxy = 0.0;
    double sxx = 0.0;
    for (const ProbeObservation& p : inputs.probes) {
      if (p.delta == 0.0 || !std::isfinite(p.delta) ||
          !std::isfinite(p.delta_K)) {
        throw ArgumentError("estimate_primitives: probe deltas must be "
                            "finite and nonzero");
      }
      if (!seen.insert(std::fabs(p.delta)).second) {
        throw ArgumentError("estimate_primitives: probe deltas must be "
                            "distinct");
      }
      const double x = p.delta * p.delta;
      sxy += x * p.delta_K;
      sxx += x * x;
    }
    r.kappa_hat = sxy / sxx;
  }
  if (!(r.kappa_hat > 0.0) || !std::isfinite(r.kappa_hat)) {
    std::ostringstream os;
    os << "estimate_primitives: kappa estimate " << r.kappa_hat
       << " is not positive";
    throw EstimationError(os.str());
  }

  r.t_hat = std::sqrt(r.kappa_hat / (2.0 * inputs.cross_price_slope));
  r.M = conduct_statistic(r.t_hat, r.kappa_hat);
  if (inputs.p_obs) {
    r.c_hat = *inputs.p_obs - r.M;
    if (*r.c_hat < 0.0) {
      r.consistent = false;
      r.warnings.push_back(
          "negative marginal cost: observed price lies below the implied "
          "markup t^2/kappa");
    }
  }
  r.F_hat = inputs.fixed_outlays / inputs.amortization_base;
  r.V = r.M / 4.0 - r.F_hat;
  return r;
}

StressReport stress_test(const CapabilityProfile& profile,
                         std::span<const double> A_grid, double v_floor) {
  StressReport report;
  const std::size_t n = A_grid.size();
  std::vector<double> M(n);
  std::vector<double> V(n);
  if (const ParametricFamily* family = profile.family()) {
    for (double A : A_grid) {
      if (!profile.domain().contains(A)) profile.eval(A);  // throws
    }
    kernels::parametric_conduct_viability(*family, A_grid, M, V);
  } else {
    for (std::size_t i = 0; i < n; ++i) {
      const ConductViability cv = conduct_viability(profile, A_grid[i]);
      M[i] = cv.M;
      V[i] = cv.V;
    }
  }
  report.rows.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const bool flagged = V[i] < v_floor;
    report.rows.push_back({A_grid[i], M[i], V[i], flagged});
    if (flagged && !report.first_flag) report.first_flag = i;
  }
  if (report.first_flag) {
    const double A = A_grid[*report.first_flag];
    const PrimitiveValues v = profile.eval(A);
    RestoringRemedies rem;
    rem.A = A;
    rem.V = V[*report.first_flag];
    rem.required_dF = rem.V - v_floor;
    const double need = v_floor + v.F;  // required gross margin
    if (need > 0.0) {
      rem.required_dkappa = v.t * v.t / (4.0 * need) - v.kappa;
      rem.required_dt = std::sqrt(4.0 * v.kappa * need) - v.t;
    }
    report.remedies = rem;
  }
  return report;
}

}  // namespace centripetal

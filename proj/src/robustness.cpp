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

#include "centripetal/robustness.hpp"

#include <algorithm>
#include <cmath>

namespace centripetal {

GeneralizedSolution generalized_equilibrium(const CapabilityProfile& profile,
                                            double A,
                                            const CurvatureSpec& curv,
                                            double f_half) {
  if (!(curv.phi2 > 0.0) || !(curv.h2 > 0.0)) {
    throw ArgumentError("generalized_equilibrium: curvatures must be > 0");
  }
  if (!(f_half > 0.0)) {
    throw ArgumentError("generalized_equilibrium: f_half must be > 0");
  }
  const PrimitiveValues v = profile.eval(A);
  GeneralizedSolution s;
  s.d_star = v.t * curv.phi2 / (v.kappa * curv.h2 * f_half);
  s.markup = 0.5 * v.t * curv.phi2 * s.d_star / f_half;
  return s;
}

R4Condition r4_condition(const CapabilityProfile& profile, double A,
                         const CurvatureSpec& curv) {
  if (!(curv.phi2 > 0.0) || !(curv.h2 > 0.0)) {
    throw ArgumentError("r4_condition: curvatures must be > 0");
  }
  const PrimitiveValues v = profile.eval(A);
  R4Condition r;
  r.dlog_d = v.dt / v.t + curv.dphi2 / curv.phi2 - v.dkappa / v.kappa -
             curv.dh2 / curv.h2;
  r.homogenizing = r.dlog_d < 0.0;
  return r;
}

AffineReport affine_invariance_check(const CapabilityProfile& profile,
                                     double A, double a, double b) {
  if (!(a > 0.0) || !std::isfinite(a)) {
    throw ArgumentError("affine_invariance_check: scale must be > 0");
  }
  if (!std::isfinite(b)) {
    throw ArgumentError("affine_invariance_check: shift must be finite");
  }
  const PrimitiveValues v = profile.eval(A);
  const EquilibriumPoint base = equilibrium_from_primitives(v);
  if (base.boundary) {
    throw UnsupportedError(
        "affine_invariance_check: baseline d* is clamped at the line end");
  }

  // Rescaled market: squared distances grow by a^2, the unit consumer mass
  // spreads over a line of length a.
  const double t_scaled = v.t / (a * a);
  const double kappa_scaled = v.kappa / (a * a);
  const double density = 1.0 / a;
  const SymmetricSolution s =
      symmetric_solution(t_scaled, kappa_scaled, v.c, v.F, density, a);

  // Price stage re-solved on the rescaled line as a cross-check; the shift b
  // moves every location and the template alike and never enters.
  const PriceOutcome prices = price_equilibrium(
      MarketConfig{s.d_star, t_scaled, v.c, v.c, density});

  AffineReport r;
  r.scale = a;
  r.shift = b;
  r.d_star = base.d_star;
  r.d_star_rescaled = s.d_star;
  r.markup = base.markup;
  r.markup_rescaled = s.markup;
  r.p_star = base.p_star;
  r.p_star_rescaled = s.p_star;
  r.profit = base.profit;
  r.profit_rescaled = s.profit;
  r.max_deviation = std::max({std::fabs(s.d_star - a * base.d_star),
                              std::fabs(s.markup - base.markup),
                              std::fabs(prices.markup1 - base.markup),
                              std::fabs(s.p_star - base.p_star),
                              std::fabs(prices.p1 - base.p_star),
                              std::fabs(s.profit - base.profit)});
  return r;
}

CostGap cost_gap_comparison(const MarketConfig& config) {
  const PriceOutcome prices = price_equilibrium(config);
  CostGap g;
  g.exact_gap = prices.p1 - prices.p2;
  g.pass_through_gap = config.c1 - config.c2;
  g.discrepancy = g.exact_gap - g.pass_through_gap;
  return g;
}

CoverageSolution coverage_scaled_equilibrium(const CapabilityProfile& profile,
                                             double A,
                                             const CoverageMultipliers& mult) {
  if (!(mult.lambda > 0.0) || !(mult.xi > 0.0)) {
    throw ArgumentError("coverage multipliers must be > 0");
  }
  const PrimitiveValues v = profile.eval(A);
  CoverageSolution s;
  s.d_star = v.t / v.kappa * mult.xi;
  s.markup = mult.lambda * v.t * s.d_star;
  return s;
}

}  // namespace centripetal

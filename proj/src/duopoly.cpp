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

#include "centripetal/duopoly.hpp"

#include <cmath>
#include <sstream>

namespace centripetal {

void validate_config(const MarketConfig& config) {
  if (!(config.d > 0.0) || !std::isfinite(config.d)) {
    throw ArgumentError("market config: d must be > 0");
  }
  if (!(config.t > 0.0) || !std::isfinite(config.t)) {
    throw ArgumentError("market config: t must be > 0");
  }
  if (!(config.f_half > 0.0) || !std::isfinite(config.f_half)) {
    throw ArgumentError("market config: f_half must be > 0");
  }
  if (!(config.c1 >= 0.0) || !(config.c2 >= 0.0) ||
      !std::isfinite(config.c1) || !std::isfinite(config.c2)) {
    throw ArgumentError("market config: costs must be finite and >= 0");
  }
}

IndifferentConsumer indifferent_consumer(const MarketConfig& config,
                                         double p1, double p2) {
  if (!(config.d > 0.0)) throw ArgumentError("indifferent_consumer: d <= 0");
  if (!(config.t > 0.0)) throw ArgumentError("indifferent_consumer: t <= 0");
  const double theta = 0.5 + (p2 - p1) / (2.0 * config.t * config.d);
  if (theta < 0.0) return {0.0, true};
  if (theta > 1.0) return {1.0, true};
  return {theta, false};
}

double firm1_demand(const MarketConfig& config, double p1, double p2) {
  const double theta = indifferent_consumer(config, p1, p2).position;
  if (config.f_half == 1.0) return theta;
  const double share = 0.5 + config.f_half * (theta - 0.5);
  return share < 0.0 ? 0.0 : (share > 1.0 ? 1.0 : share);
}

PriceOutcome price_equilibrium(const MarketConfig& config) {
  validate_config(config);
  const double base = config.t * config.d / config.f_half;
  const double slope = config.f_half / (2.0 * config.t * config.d);

  PriceOutcome out;
  out.markup1 = base + (config.c2 - config.c1) / 3.0;
  out.markup2 = base + (config.c1 - config.c2) / 3.0;
  out.p1 = config.c1 + out.markup1;
  out.p2 = config.c2 + out.markup2;
  out.share1 = 0.5 + slope * (out.p2 - out.p1);
  out.share2 = 0.5 + slope * (out.p1 - out.p2);
  if (!(out.share1 > 0.0 && out.share1 < 1.0)) {
    std::ostringstream os;
    os << "market tipping: cost gap |c1 - c2| = "
       << std::fabs(config.c1 - config.c2)
       << " leaves no interior price equilibrium (limit 3 t d / f_half = "
       << 3.0 * base << ")";
    throw TippingError(os.str());
  }
  out.op_profit1 = out.markup1 * out.share1;
  out.op_profit2 = out.markup2 * out.share2;
  return out;
}

FocResiduals price_foc_residuals(const MarketConfig& config,
                                 const PriceOutcome& outcome) {
  const double slope = config.f_half / (2.0 * config.t * config.d);
  return {outcome.share1 - outcome.markup1 * slope,
          outcome.share2 - outcome.markup2 * slope};
}

SymmetricSolution symmetric_solution(double t, double kappa, double c,
                                     double F, double f_half,
                                     double max_d) {
  SymmetricSolution s;
  s.d_star = t / (kappa * f_half);
  if (s.d_star >= max_d) {
    s.d_star = max_d;
    s.boundary = true;
  }
  s.markup = t * s.d_star / f_half;
  s.p_star = c + s.markup;
  if (s.boundary) {
    const double half = s.d_star / 2.0;
    s.gross_margin = s.markup / 2.0 - kappa * half * half;
  } else {
    s.gross_margin = s.markup / 4.0;
  }
  s.profit = s.gross_margin - F;
  return s;
}

double mismatch(double d) {
  const double gap = d / 2.0 - 0.25;
  return 1.0 / 48.0 + gap * gap;
}

EquilibriumPoint equilibrium_from_primitives(const PrimitiveValues& v) {
  const SymmetricSolution s = symmetric_solution(v.t, v.kappa, v.c, v.F);
  EquilibriumPoint e;
  e.A = v.A;
  e.t = v.t;
  e.kappa = v.kappa;
  e.c = v.c;
  e.F = v.F;
  e.d_star = s.d_star;
  e.markup = s.markup;
  e.p_star = s.p_star;
  e.boundary = s.boundary;
  if (s.boundary) {
    e.slope_cross = 1.0 / (2.0 * v.t * s.d_star);
    e.eps12 = 2.0 * e.slope_cross * e.p_star;
  } else {
    e.slope_cross = v.kappa / (2.0 * v.t * v.t);
    e.eps12 = 1.0 + v.kappa * v.c / (v.t * v.t);
  }
  e.slope_own = -e.slope_cross;
  e.lerner = e.markup / e.p_star;
  e.gross_margin = s.gross_margin;
  e.profit = s.profit;
  e.mismatch = mismatch(e.d_star);
  e.cs = -e.p_star - v.t * e.mismatch;

  const double fields[] = {e.d_star, e.p_star,       e.markup, e.slope_cross,
                           e.lerner, e.eps12,        e.profit, e.cs};
  for (double x : fields) {
    if (!std::isfinite(x)) {
      std::ostringstream os;
      os << "non-finite equilibrium value at A=" << v.A;
      throw EvaluationError(os.str());
    }
  }
  return e;
}

EquilibriumPoint solve_equilibrium(const CapabilityProfile& profile,
                                   double A) {
  return equilibrium_from_primitives(profile.eval(A));
}

ComparativeStatics comparative_statics_from_primitives(
    const PrimitiveValues& v) {
  const SymmetricSolution s = symmetric_solution(v.t, v.kappa, v.c, v.F);
  if (s.boundary) {
    std::ostringstream os;
    os << "comparative statics undefined at clamped d* (t/kappa >= 1) at A="
       << v.A;
    throw UnsupportedError(os.str());
  }
  const double t = v.t;
  const double k = v.kappa;
  const double k2 = k * k;
  const double t2 = t * t;

  ComparativeStatics cs;
  cs.dd_star = (v.dt * k - t * v.dkappa) / k2;
  cs.dM = (2.0 * t * v.dt * k - t2 * v.dkappa) / k2;
  cs.dp_star = v.dc + cs.dM;
  cs.dS = (v.dkappa * t2 - 2.0 * k * t * v.dt) / (2.0 * t2 * t2);
  cs.dProfit = (t / (2.0 * k)) * v.dt - (t2 / (4.0 * k2)) * v.dkappa - v.dF;
  cs.dV = cs.dM / 4.0 - v.dF;

  const double d = s.d_star;
  cs.cs_terms.price = -cs.dp_star;
  cs.cs_terms.mismatch_weight = -v.dt * mismatch(d);
  cs.cs_terms.variety = -t * 2.0 * (d / 2.0 - 0.25) * (cs.dd_star / 2.0);
  cs.cs_terms.total = cs.cs_terms.price + cs.cs_terms.mismatch_weight +
                      cs.cs_terms.variety;
  return cs;
}

ComparativeStatics comparative_statics(const CapabilityProfile& profile,
                                       double A) {
  return comparative_statics_from_primitives(profile.eval(A));
}

RateCondition elasticity_rate_condition(const CapabilityProfile& profile,
                                        double A) {
  const PrimitiveValues v = profile.eval(A);
  if (symmetric_solution(v.t, v.kappa, v.c, v.F).boundary) {
    throw UnsupportedError("elasticity_rate_condition: d* is clamped");
  }
  if (v.c == 0.0) {
    throw ArgumentError(
        "elasticity_rate_condition: c(A) = 0 makes c'/c undefined");
  }
  RateCondition r;
  r.margin = v.dkappa / v.kappa - 2.0 * v.dt / v.t + v.dc / v.c;
  r.holds = r.margin > 0.0;
  return r;
}

}  // namespace centripetal

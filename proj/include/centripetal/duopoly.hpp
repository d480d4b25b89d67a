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

// Two-stage Hotelling duopoly on the unit style line with the template at the
// midpoint. Firms sit at 1/2 -/+ d/2, consumers pay quadratic mismatch t*gap^2
// and firms pay kappa*(d/2)^2 to locate away from the template.

#ifndef CENTRIPETAL_DUOPOLY_HPP_
#define CENTRIPETAL_DUOPOLY_HPP_

#include "centripetal/primitives.hpp"

namespace centripetal {

struct MarketConfig {
  double d = 0.5;       // distance between the two products
  double t = 1.0;       // transport intensity
  double c1 = 0.0;
  double c2 = 0.0;
  double f_half = 1.0;  // consumer density at the midpoint
};

// Throws ArgumentError unless d, t, f_half > 0 and both costs >= 0.
void validate_config(const MarketConfig& config);

struct IndifferentConsumer {
  double position = 0.5;
  bool clamped = false;
};

// theta = 1/2 + (p2 - p1) / (2 t d), clamped to [0, 1].
IndifferentConsumer indifferent_consumer(const MarketConfig& config,
                                         double p1, double p2);

// Firm 1's demand. Around the midpoint the mass below the indifferent
// consumer is 1/2 + f_half * (theta - 1/2); exact for uniform density.
double firm1_demand(const MarketConfig& config, double p1, double p2);

struct PriceOutcome {
  double p1 = 0.0;
  double p2 = 0.0;
  double share1 = 0.5;
  double share2 = 0.5;
  double markup1 = 0.0;
  double markup2 = 0.0;
  double op_profit1 = 0.0;
  double op_profit2 = 0.0;
};

// Exact solution of the two linear price first-order conditions,
//   p_i = c_i + t d / f_half + (c_j - c_i) / 3.
// Throws TippingError when the implied share leaves (0, 1).
PriceOutcome price_equilibrium(const MarketConfig& config);

// share_i - markup_i * f_half / (2 t d) for both firms.
struct FocResiduals {
  double firm1 = 0.0;
  double firm2 = 0.0;
};
FocResiduals price_foc_residuals(const MarketConfig& config,
                                 const PriceOutcome& outcome);

// Symmetric two-stage solution for given primitive levels. With a density
// f_half at the midpoint, d* = t / (kappa f_half) and markup = t d* / f_half;
// d* >= max_d (the length of the style line) is clamped and flagged.
struct SymmetricSolution {
  double d_star = 0.0;
  double markup = 0.0;
  double p_star = 0.0;
  double gross_margin = 0.0;
  double profit = 0.0;
  bool boundary = false;
};
SymmetricSolution symmetric_solution(double t, double kappa, double c,
                                     double F, double f_half = 1.0,
                                     double max_d = 1.0);

// Expected squared distance to the nearest product with uniform consumers,
// 1/48 + (d/2 - 1/4)^2.
double mismatch(double d);

struct EquilibriumPoint {
  double A = 0.0;
  double t = 0.0;
  double kappa = 0.0;
  double c = 0.0;
  double F = 0.0;

  double d_star = 0.0;
  double p_star = 0.0;
  double markup = 0.0;        // M = t^2/kappa in the interior
  double slope_own = 0.0;     // dD1/dp1
  double slope_cross = 0.0;   // dD1/dp2 = kappa / (2 t^2)
  double lerner = 0.0;        // M / p*
  double eps12 = 0.0;         // 1 + kappa c / t^2
  double gross_margin = 0.0;  // M / 4
  double profit = 0.0;        // gross margin - F, the viability statistic V
  double mismatch = 0.0;
  double cs = 0.0;            // -p* - t E, net of the reservation value
  bool boundary = false;      // d* clamped to 1
};

EquilibriumPoint equilibrium_from_primitives(const PrimitiveValues& v);
EquilibriumPoint solve_equilibrium(const CapabilityProfile& profile,
                                   double A);

// Price, mismatch-weight and variety channels of dCS/dA.
struct CsTerms {
  double price = 0.0;
  double mismatch_weight = 0.0;
  double variety = 0.0;
  double total = 0.0;
};

struct ComparativeStatics {
  double dd_star = 0.0;
  double dp_star = 0.0;
  double dS = 0.0;
  double dProfit = 0.0;
  double dM = 0.0;
  double dV = 0.0;
  CsTerms cs_terms;
};

// Analytic A-derivatives at an interior point; throws UnsupportedError when
// d* is clamped.
ComparativeStatics comparative_statics_from_primitives(
    const PrimitiveValues& v);
ComparativeStatics comparative_statics(const CapabilityProfile& profile,
                                       double A);

struct RateCondition {
  bool holds = false;
  double margin = 0.0;  // kappa'/kappa - 2 t'/t + c'/c
};

// Whether the cross-price elasticity rises with capability.
RateCondition elasticity_rate_condition(const CapabilityProfile& profile,
                                        double A);

}  // namespace centripetal

#endif  // CENTRIPETAL_DUOPOLY_HPP_

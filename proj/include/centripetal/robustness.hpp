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

// Variants of the baseline: local curvature plugs, non-uniform density,
// affine rescaling of the style axis, asymmetric costs, and exogenous
// coverage multipliers.

#ifndef CENTRIPETAL_ROBUSTNESS_HPP_
#define CENTRIPETAL_ROBUSTNESS_HPP_

#include "centripetal/duopoly.hpp"
#include "centripetal/primitives.hpp"

namespace centripetal {

// Local curvatures at zero of the mismatch and originality cost functions,
// with their capability derivatives. phi2 = h2 = 2 is the quadratic model.
struct CurvatureSpec {
  double phi2 = 2.0;
  double dphi2 = 0.0;
  double h2 = 2.0;
  double dh2 = 0.0;
};

struct GeneralizedSolution {
  double d_star = 0.0;
  double markup = 0.0;
};

// d* = t phi2 / (kappa h2 f_half), markup = t phi2 d* / (2 f_half).
GeneralizedSolution generalized_equilibrium(const CapabilityProfile& profile,
                                            double A,
                                            const CurvatureSpec& curv,
                                            double f_half = 1.0);

struct R4Condition {
  double dlog_d = 0.0;  // t'/t + phi2'/phi2 - kappa'/kappa - h2'/h2
  bool homogenizing = false;
};

R4Condition r4_condition(const CapabilityProfile& profile, double A,
                         const CurvatureSpec& curv);

struct AffineReport {
  double scale = 1.0;
  double shift = 0.0;
  double d_star = 0.0;           // baseline, unit line
  double d_star_rescaled = 0.0;  // in rescaled units; expected scale * d_star
  double markup = 0.0;
  double markup_rescaled = 0.0;
  double p_star = 0.0;
  double p_star_rescaled = 0.0;
  double profit = 0.0;
  double profit_rescaled = 0.0;
  double max_deviation = 0.0;
};

// Re-solves the market on the line theta' = a theta + b with t/a^2 and
// kappa/a^2 (consumer density 1/a) and compares with the baseline.
AffineReport affine_invariance_check(const CapabilityProfile& profile,
                                     double A, double a, double b);

struct CostGap {
  double exact_gap = 0.0;  // p1 - p2 from the exact price equilibrium
  double pass_through_gap = 0.0;  // c1 - c2, the full pass-through reading
  double discrepancy = 0.0;
};

CostGap cost_gap_comparison(const MarketConfig& config);

struct CoverageMultipliers {
  double lambda = 1.0;  // price multiplier
  double xi = 1.0;      // location multiplier
};

struct CoverageSolution {
  double markup = 0.0;  // lambda t d*
  double d_star = 0.0;  // xi t / kappa
};

CoverageSolution coverage_scaled_equilibrium(const CapabilityProfile& profile,
                                             double A,
                                             const CoverageMultipliers& mult);

}  // namespace centripetal

#endif  // CENTRIPETAL_ROBUSTNESS_HPP_

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

// Brute-force checks of the closed forms: grid best-response price Nash,
// grid search over symmetric locations, Simpson welfare integration and
// central finite differences. None of these routines build payoffs from the
// closed-form markup; they only read the primitives.

#ifndef CENTRIPETAL_ORACLE_HPP_
#define CENTRIPETAL_ORACLE_HPP_

#include <functional>
#include <string>
#include <vector>

#include "centripetal/duopoly.hpp"
#include "centripetal/primitives.hpp"

namespace centripetal {

struct GridSpec {
  double lo = 0.0;
  double hi = 1.0;
  double step = 1e-3;
  int max_iters = 1000;
  double tol = 0.0;  // fixed-point tolerance in grid steps; 0 = exact repeat
  // Local x10 refinements around the coarse fixed point. Each pass re-solves
  // on an 11-step window at a tenth of the previous step.
  int refinements = 0;

  // Throws ArgumentError. A single-point grid (lo == hi) is allowed.
  void validate() const;
  std::vector<double> points() const;
};

struct OracleReport {
  std::vector<std::string> labels;
  std::vector<double> values;
  std::vector<double> closed_form;  // NaN where no closed form exists
  double residual = 0.0;            // max |value - closed_form| (or rel. err)
  int iterations = 0;
  bool converged = false;
  bool boundary = false;            // argmax sits on a grid endpoint
  bool excludes_optimum = false;    // residual > 2 * final step
};

// Alternating exact best responses on the price grid, starting from the
// grid points nearest (c1, c2).
OracleReport grid_price_nash(const MarketConfig& config, const GridSpec& grid);

// Argmax over symmetric distances of op_profit(d) - kappa (d/2)^2 - F, with
// op_profit taken from grid_price_nash at each d.
OracleReport two_stage_grid_solve(const CapabilityProfile& profile, double A,
                                  const GridSpec& d_grid,
                                  const GridSpec& p_grid);

using Density = std::function<double(double)>;

// Integral over [0, 1] of density(theta) * (-p - t (theta - x_near)^2) where
// x_near = 1/2 -/+ d/2 on either side of the midpoint. Composite Simpson with
// `panels` panels on each half. The density must integrate to 1 (to 1e-9).
double numeric_consumer_surplus(double d, double p, double t,
                                const Density& density = {},
                                int panels = 10000);

// Central differences of d*, p*, S, profit, M, V and cs against the analytic
// comparative statics. residual = max relative error.
OracleReport finite_difference_check(const CapabilityProfile& profile,
                                     double A, double h);

}  // namespace centripetal

#endif  // CENTRIPETAL_ORACLE_HPP_

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

// Capability adoption as a pre-stage game: firms pick A_i, then locate and
// price. Homogenization (t, kappa and hence d) follows the higher adopted
// capability; marginal and fixed costs are firm-specific.

#ifndef CENTRIPETAL_ADOPTION_HPP_
#define CENTRIPETAL_ADOPTION_HPP_

#include <array>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "centripetal/duopoly.hpp"
#include "centripetal/entry.hpp"
#include "centripetal/primitives.hpp"

namespace centripetal {

// Adoption cost Phi(A) with its derivative.
class AdoptionCost {
 public:
  // Phi(A) = psi A^2 / 2.
  static AdoptionCost quadratic(double psi);
  // Arbitrary cost; convexity is not enforced (see is_convex_on).
  static AdoptionCost custom(std::function<double(double)> value,
                             std::function<double(double)> marginal);

  double value(double A) const { return value_(A); }
  double marginal(double A) const { return marginal_(A); }

  // Phi' non-decreasing across the grid.
  bool is_convex_on(const std::vector<double>& grid) const;

 private:
  std::function<double(double)> value_;
  std::function<double(double)> marginal_;
};

struct AdoptionPayoffs {
  double pi1 = 0.0;
  double pi2 = 0.0;
  double A_market = 0.0;  // max(A1, A2)
  double t = 0.0;
  double kappa = 0.0;
  double d = 0.0;
  bool clamped = false;   // t/kappa >= 1 at the market capability
  MarketConfig market;
  PriceOutcome prices;
};

// Net payoffs: exact asymmetric operating profit minus kappa (d/2)^2 minus
// F(A_i) minus Phi(A_i). `d_override` replaces the market-level d = t/kappa.
AdoptionPayoffs adoption_payoffs(const CapabilityProfile& profile, double A1,
                                 double A2, const AdoptionCost& cost,
                                 std::optional<double> d_override = {});

enum class Action { kLow = 0, kHigh = 1 };

struct CellIndex {
  Action firm1;
  Action firm2;
};

std::string to_string(CellIndex cell);

struct ParetoRelation {
  CellIndex dominant;
  CellIndex dominated;
};

struct AdoptionMatrix {
  double A_low = 0.0;
  double A_high = 0.0;
  // cells[a1][a2], a = 0 for Low, 1 for High.
  std::array<std::array<AdoptionPayoffs, 2>, 2> cells;
  std::vector<CellIndex> nash_cells;
  std::vector<ParetoRelation> pareto_dominance;
  std::vector<CellIndex> pareto_efficient;
  bool is_prisoners_dilemma = false;

  const AdoptionPayoffs& cell(Action a1, Action a2) const {
    return cells[static_cast<int>(a1)][static_cast<int>(a2)];
  }
};

// Throws TippingError naming the cell when a cell has no interior prices.
AdoptionMatrix adoption_matrix(const CapabilityProfile& profile, double A_low,
                               double A_high, const AdoptionCost& cost);

struct WedgeReport {
  double private_pass_through = 0.0;    // c'(A)
  double competitive_externality = 0.0; // dProfit/dA
  double adoption_cost_margin = 0.0;    // Phi'(A)
  double total = 0.0;
};

WedgeReport wedge_decomposition(const CapabilityProfile& profile, double A,
                                const AdoptionCost& cost);

struct AdoptionFocResult {
  std::optional<double> root;
  int sign_changes = 0;
  bool degenerate = false;  // dProfit/dA - Phi' vanishes on the whole scan
  Interval degenerate_interval;
  bool multiplicity_warning = false;
  std::string explanation;
};

// Root of dProfit/dA - Phi'(A) on `search` by sign-change scan and bisection.
AdoptionFocResult symmetric_adoption_foc(const CapabilityProfile& profile,
                                         const AdoptionCost& cost,
                                         Interval search, double tol = 1e-10,
                                         int scan_points = 257);

}  // namespace centripetal

#endif  // CENTRIPETAL_ADOPTION_HPP_

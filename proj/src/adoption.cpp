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

#include "centripetal/adoption.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <utility>

namespace centripetal {

AdoptionCost AdoptionCost::quadratic(double psi) {
  if (!(psi >= 0.0)) throw ArgumentError("AdoptionCost: psi must be >= 0");
  return custom([psi](double A) { return psi * A * A / 2.0; },
                [psi](double A) { return psi * A; });
}

AdoptionCost AdoptionCost::custom(std::function<double(double)> value,
                                  std::function<double(double)> marginal) {
  if (!value || !marginal) {
    throw ArgumentError("AdoptionCost: value and marginal must be callable");
  }
  AdoptionCost cost;
  cost.value_ = std::move(value);
  cost.marginal_ = std::move(marginal);
  return cost;
}

bool AdoptionCost::is_convex_on(const std::vector<double>& grid) const {
  for (std::size_t i = 1; i < grid.size(); ++i) {
    if (marginal(grid[i]) < marginal(grid[i - 1])) return false;
  }
  return true;
}

AdoptionPayoffs adoption_payoffs(const CapabilityProfile& profile, double A1,
                                 double A2, const AdoptionCost& cost,
                                 std::optional<double> d_override) {
  AdoptionPayoffs out;
  out.A_market = std::max(A1, A2);
  const PrimitiveValues market = profile.eval(out.A_market);
  const PrimitiveValues firm1 = profile.eval(A1);
  const PrimitiveValues firm2 = profile.eval(A2);
  out.t = market.t;
  out.kappa = market.kappa;
  if (d_override) {
    if (!(*d_override > 0.0 && *d_override <= 1.0)) {
      throw ArgumentError("adoption_payoffs: d override must lie in (0, 1]");
    }
    out.d = *d_override;
  } else {
    out.d = market.t / market.kappa;
    if (out.d >= 1.0) {
      out.d = 1.0;
      out.clamped = true;
    }
  }
  out.market = MarketConfig{out.d, market.t, firm1.c, firm2.c, 1.0};
  out.prices = price_equilibrium(out.market);

  const double half = out.d / 2.0;
  const double originality = market.kappa * half * half;
  out.pi1 = out.prices.op_profit1 - originality - firm1.F - cost.value(A1);
  out.pi2 = out.prices.op_profit2 - originality - firm2.F - cost.value(A2);
  return out;
}

std::string to_string(CellIndex cell) {
  auto name = [](Action a) { return a == Action::kLow ? "Low" : "High"; };
  return std::string("(") + name(cell.firm1) + "," + name(cell.firm2) + ")";
}

AdoptionMatrix adoption_matrix(const CapabilityProfile& profile, double A_low,
                               double A_high, const AdoptionCost& cost) {
  if (!(A_low <= A_high)) {
    throw ArgumentError("adoption_matrix: requires A_low <= A_high");
  }
  AdoptionMatrix m;
  m.A_low = A_low;
  m.A_high = A_high;
  const double level[2] = {A_low, A_high};
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      try {
        m.cells[i][j] = adoption_payoffs(profile, level[i], level[j], cost);
      } catch (const TippingError& e) {
        const CellIndex where{static_cast<Action>(i), static_cast<Action>(j)};
        throw TippingError("cell " + to_string(where) + ": " + e.what());
      }
    }
  }

  std::vector<CellIndex> all;
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      all.push_back({static_cast<Action>(i), static_cast<Action>(j)});
    }
  }
  auto at = [&](CellIndex c) -> const AdoptionPayoffs& {
    return m.cell(c.firm1, c.firm2);
  };
  auto flip = [](Action a) {
    return a == Action::kLow ? Action::kHigh : Action::kLow;
  };

  for (const CellIndex& c : all) {
    const bool firm1_stays =
        at(c).pi1 >= at({flip(c.firm1), c.firm2}).pi1;
    const bool firm2_stays =
        at(c).pi2 >= at({c.firm1, flip(c.firm2)}).pi2;
    if (firm1_stays && firm2_stays) m.nash_cells.push_back(c);
  }

  for (const CellIndex& x : all) {
    bool dominated = false;
    for (const CellIndex& y : all) {
      const AdoptionPayoffs& px = at(x);
      const AdoptionPayoffs& py = at(y);
      const bool weakly = py.pi1 >= px.pi1 && py.pi2 >= px.pi2;
      const bool strictly = py.pi1 > px.pi1 || py.pi2 > px.pi2;
      if (weakly && strictly) {
        m.pareto_dominance.push_back({y, x});
        dominated = true;
      }
    }
    if (!dominated) m.pareto_efficient.push_back(x);
  }

  const AdoptionPayoffs& low = m.cell(Action::kLow, Action::kLow);
  const AdoptionPayoffs& high = m.cell(Action::kHigh, Action::kHigh);
  const bool high_unique_nash =
      m.nash_cells.size() == 1 && m.nash_cells[0].firm1 == Action::kHigh &&
      m.nash_cells[0].firm2 == Action::kHigh;
  m.is_prisoners_dilemma =
      high_unique_nash && low.pi1 > high.pi1 && low.pi2 > high.pi2;
  return m;
}

WedgeReport wedge_decomposition(const CapabilityProfile& profile, double A,
                                const AdoptionCost& cost) {
  const PrimitiveValues v = profile.eval(A);
  const ComparativeStatics cs = comparative_statics_from_primitives(v);
  WedgeReport w;
  w.private_pass_through = v.dc;
  w.competitive_externality = cs.dProfit;
  w.adoption_cost_margin = cost.marginal(A);
  w.total = w.private_pass_through + w.competitive_externality -
            w.adoption_cost_margin;
  return w;
}

AdoptionFocResult symmetric_adoption_foc(const CapabilityProfile& profile,
                                         const AdoptionCost& cost,
                                         Interval search, double tol,
                                         int scan_points) {
  if (!(search.lo < search.hi)) {
    throw ArgumentError("symmetric_adoption_foc: search needs lo < hi");
  }
  if (scan_points < 2 || !(tol > 0.0)) {
    throw ArgumentError("symmetric_adoption_foc: bad scan settings");
  }
  if (!profile.domain().contains(search.lo) ||
      !profile.domain().contains(search.hi)) {
    throw DomainError("symmetric_adoption_foc: search leaves the domain");
  }

  // Gap with a rounding-aware zero test: values within a few ulps of the
  // larger side count as exact roots.
  auto gap = [&](double A, bool* is_zero) {
    const double lhs = comparative_statics(profile, A).dProfit;
    const double rhs = cost.marginal(A);
    const double g = lhs - rhs;
    const double scale = std::max({1.0, std::fabs(lhs), std::fabs(rhs)});
    if (is_zero != nullptr) *is_zero = std::fabs(g) <= 1e-13 * scale;
    return g;
  };

  const auto n = static_cast<std::size_t>(scan_points);
  std::vector<double> grid(n);
  std::vector<double> value(n);
  std::vector<bool> zero(n);
  for (std::size_t i = 0; i < n; ++i) {
    grid[i] = search.lo + (search.hi - search.lo) * static_cast<double>(i) /
                              static_cast<double>(n - 1);
    bool z = false;
    value[i] = gap(grid[i], &z);
    zero[i] = z;
  }

  AdoptionFocResult out;
  if (std::all_of(zero.begin(), zero.end(), [](bool z) { return z; })) {
    out.degenerate = true;
    out.degenerate_interval = search;
    out.explanation =
        "dProfit/dA equals Phi'(A) across the whole search interval";
    return out;
  }

  struct Event {
    std::size_t index;
    bool exact;
  };
  std::vector<Event> events;
  for (std::size_t i = 0; i < n; ++i) {
    if (zero[i]) {
      events.push_back({i, true});
    } else if (i + 1 < n && !zero[i + 1] &&
               (value[i] < 0.0) != (value[i + 1] < 0.0)) {
      events.push_back({i, false});
    }
  }
  out.sign_changes = static_cast<int>(events.size());

  if (events.empty()) {
    std::ostringstream os;
    os << "dProfit/dA - Phi'(A) stays " << (value.front() < 0.0 ? "negative" : "positive")
       << " on [" << search.lo << ", " << search.hi
       << "]; no symmetric interior adoption level";
    out.explanation = os.str();
    return out;
  }
  out.multiplicity_warning = events.size() > 1;

  const Event& first = events.front();
  if (first.exact) {
    out.root = grid[first.index];
  } else {
    double lo = grid[first.index];
    double hi = grid[first.index + 1];
    const bool neg_lo = value[first.index] < 0.0;
    while (hi - lo >= tol) {
      const double mid = 0.5 * (lo + hi);
      bool z = false;
      const double g = gap(mid, &z);
      if (z) {
        lo = hi = mid;
        break;
      }
      if ((g < 0.0) == neg_lo) {
        lo = mid;
      } else {
        hi = mid;
      }
    }
    out.root = 0.5 * (lo + hi);
  }
  out.explanation = out.multiplicity_warning
                        ? "several sign changes; first root returned"
                        : "single root";
  return out;
}

}  // namespace centripetal

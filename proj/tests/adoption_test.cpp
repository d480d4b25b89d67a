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


#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "centripetal/adoption.hpp"
#include "centripetal/oracle.hpp"
#include "centripetal/scenario.hpp"
#include "test_support.hpp"

namespace centripetal {
namespace {

using testing::s0;

TEST(AdoptionCost, QuadraticValueAndMarginal) {
  AdoptionCost c = AdoptionCost::quadratic(0.2);
  EXPECT_DOUBLE_EQ(c.value(0.5), 0.025);
  EXPECT_DOUBLE_EQ(c.marginal(0.5), 0.1);
  EXPECT_TRUE(c.is_convex_on({0.0, 0.5, 1.0, 2.0}));
  EXPECT_THROW(AdoptionCost::quadratic(-1.0), ArgumentError);
}

TEST(AdoptionCost, NonConvexDetected) {
  AdoptionCost c = AdoptionCost::custom([](double A) { return std::sin(A); },
                                        [](double A) { return std::cos(A); });
  EXPECT_FALSE(c.is_convex_on({0.0, 0.5, 1.0}));
}

TEST(AdoptionPayoffs, SymmetricZeroCollapsesToProfit) {
  AdoptionPayoffs p =
      adoption_payoffs(s0(), 0.0, 0.0, AdoptionCost::quadratic(0.0));
  EXPECT_NEAR(p.pi1, 0.075, 1e-16);
  EXPECT_NEAR(p.pi2, 0.075, 1e-16);
  EXPECT_DOUBLE_EQ(p.prices.op_profit1, 0.25);
}

TEST(AdoptionPayoffs, AsymmetricCellMatchesHandValues) {
  AdoptionPayoffs p =
      adoption_payoffs(s0(), 0.5, 0.0, AdoptionCost::quadratic(0.0));
  EXPECT_DOUBLE_EQ(p.A_market, 0.5);
  EXPECT_NEAR(p.t, 2.0 / 3.0, 1e-15);
  EXPECT_DOUBLE_EQ(p.kappa, 3.0);
  EXPECT_NEAR(p.d, 2.0 / 9.0, 1e-15);
  EXPECT_DOUBLE_EQ(p.market.c1, 0.8);
  EXPECT_DOUBLE_EQ(p.market.c2, 1.0);
  EXPECT_NEAR(p.prices.markup1, 4.0 / 27.0 + 1.0 / 15.0, 1e-15);

  // Payoff rebuilt by hand: markup * share - kappa (d/2)^2 - F(A1).
  const double markup1 = 4.0 / 27.0 + 1.0 / 15.0;
  const double share1 = 0.5 + (1.0 / 15.0) / (2.0 * (2.0 / 3.0) * (2.0 / 9.0));
  const double pi1 = markup1 * share1 - 3.0 / 81.0 - 0.1;
  EXPECT_NEAR(p.pi1, pi1, 1e-14);

  // Price oracle on the same market.
  GridSpec g;
  g.lo = 0.8;
  g.hi = 1.6;
  g.step = 1e-4;
  OracleReport r = grid_price_nash(p.market, g);
  EXPECT_NEAR(r.values[0], p.prices.p1, 2e-4);
  EXPECT_NEAR(r.values[1], p.prices.p2, 2e-4);
}

TEST(AdoptionPayoffs, DiagonalIsProfitLessAdoptionCost) {
  AdoptionCost cost = AdoptionCost::quadratic(0.3);
  for (double A : {0.0, 0.2, 0.7, 1.5}) {
    AdoptionPayoffs p = adoption_payoffs(s0(), A, A, cost);
    EquilibriumPoint e = solve_equilibrium(s0(), A);
    EXPECT_EQ(p.pi1, p.pi2);
    EXPECT_NEAR(p.pi1, e.profit - cost.value(A), 1e-15);
  }
}

TEST(AdoptionPayoffs, SwapSymmetry) {
  testing::ConfigGen gen(51);
  AdoptionCost cost = AdoptionCost::quadratic(0.1);
  for (int i = 0; i < 40; ++i) {
    double a = gen.uniform(0.0, 0.6), b = gen.uniform(0.0, 0.6);
    AdoptionPayoffs x = adoption_payoffs(s0(), a, b, cost);
    AdoptionPayoffs y = adoption_payoffs(s0(), b, a, cost);
    EXPECT_NEAR(x.pi1, y.pi2, 1e-15);
    EXPECT_NEAR(x.pi2, y.pi1, 1e-15);
  }
}

TEST(AdoptionPayoffs, DistanceOverride) {
  AdoptionPayoffs p = adoption_payoffs(s0(), 0.0, 0.0,
                                       AdoptionCost::quadratic(0.0), 0.25);
  EXPECT_EQ(p.d, 0.25);
  EXPECT_THROW(adoption_payoffs(s0(), 0.0, 0.0, AdoptionCost::quadratic(0.0),
                                1.5),
               ArgumentError);
}

TEST(AdoptionMatrix, ReferenceScenarioClassified) {
  AdoptionMatrix m = adoption_matrix(s0(), 0.0, 0.3, AdoptionCost::quadratic(0));
  EXPECT_FALSE(m.nash_cells.empty());
  EXPECT_FALSE(m.pareto_efficient.empty());
  // Exhaustive re-derivation of the Nash set.
  for (int a = 0; a < 2; ++a) {
    for (int b = 0; b < 2; ++b) {
      bool nash = m.cells[a][b].pi1 >= m.cells[1 - a][b].pi1 &&
                  m.cells[a][b].pi2 >= m.cells[a][1 - b].pi2;
      bool listed = false;
      for (CellIndex c : m.nash_cells) {
        listed |= static_cast<int>(c.firm1) == a && static_cast<int>(c.firm2) == b;
      }
      EXPECT_EQ(nash, listed);
    }
  }
}

TEST(AdoptionMatrix, EqualLevelsAreDegenerate) {
  AdoptionMatrix m =
      adoption_matrix(s0(), 0.2, 0.2, AdoptionCost::quadratic(0.1));
  EXPECT_EQ(m.nash_cells.size(), 4u);
  EXPECT_FALSE(m.is_prisoners_dilemma);
  for (int a = 0; a < 2; ++a) {
    for (int b = 0; b < 2; ++b) EXPECT_EQ(m.cells[a][b].pi1, m.cells[0][0].pi1);
  }
}

TEST(AdoptionMatrix, ProhibitiveCostKeepsLow) {
  AdoptionMatrix m =
      adoption_matrix(s0(), 0.0, 0.3, AdoptionCost::quadratic(1e6));
  ASSERT_EQ(m.nash_cells.size(), 1u);
  EXPECT_EQ(m.nash_cells[0].firm1, Action::kLow);
  EXPECT_EQ(m.nash_cells[0].firm2, Action::kLow);
  EXPECT_FALSE(m.is_prisoners_dilemma);
}

TEST(AdoptionMatrix, ShippedFixtureIsDilemma) {
  Scenario s = load_scenario(testing::fixture_path("pd_adoption.json"));
  ASSERT_TRUE(s.adoption.has_value());
  AdoptionMatrix m =
      adoption_matrix(s.profile(), s.adoption->A_low, s.adoption->A_high,
                      AdoptionCost::quadratic(s.adoption->psi));
  EXPECT_TRUE(m.is_prisoners_dilemma);
  const auto& ll = m.cell(Action::kLow, Action::kLow);
  const auto& hh = m.cell(Action::kHigh, Action::kHigh);
  EXPECT_GT(ll.pi1, hh.pi1);
  EXPECT_GT(ll.pi2, hh.pi2);
}

TEST(AdoptionMatrix, TippingCellNamed) {
  // Steep cost decline makes the low adopter's share collapse.
  ParametricFamily f = testing::s0_family();
  f.eta = 50.0;
  try {
    adoption_matrix(CapabilityProfile::parametric(f), 0.0, 1.0,
                    AdoptionCost::quadratic(0.0));
    FAIL() << "expected TippingError";
  } catch (const TippingError& e) {
    EXPECT_NE(std::string(e.what()).find("(Low,High)"), std::string::npos);
  }
}

TEST(AdoptionMatrix, OrderChecked) {
  EXPECT_THROW(adoption_matrix(s0(), 0.5, 0.1, AdoptionCost::quadratic(0.0)),
               ArgumentError);
}

TEST(Wedge, ReferenceScenarioAtZero) {
  WedgeReport w = wedge_decomposition(s0(), 0.0, AdoptionCost::quadratic(0.2));
  EXPECT_DOUBLE_EQ(w.private_pass_through, -0.5);
  EXPECT_NEAR(w.competitive_externality, -0.475, 1e-15);
  EXPECT_EQ(w.adoption_cost_margin, 0.0);
  EXPECT_NEAR(w.total, -0.975, 1e-15);
}

TEST(Wedge, ConstantsProfile) {
  WedgeReport w = wedge_decomposition(
      testing::constants_profile(1.0, 2.0, 1.0, 0.05), 0.5,
      AdoptionCost::quadratic(0.2));
  EXPECT_EQ(w.private_pass_through, 0.0);
  EXPECT_EQ(w.competitive_externality, 0.0);
  EXPECT_DOUBLE_EQ(w.total, -0.1);
}

TEST(Wedge, TotalMatchesDifferenceOfAssembledExpression) {
  auto p = testing::s0_wide();
  AdoptionCost cost = AdoptionCost::quadratic(0.2);
  auto assembled = [&](double A) {
    return p.eval(A).c + solve_equilibrium(p, A).profit - cost.value(A);
  };
  const double h = 1e-5;
  for (double A : {0.0, 0.5, 1.0}) {
    double fd = (assembled(A + h) - assembled(A - h)) / (2 * h);
    EXPECT_NEAR(wedge_decomposition(p, A, cost).total, fd, 1e-5);
  }
}

TEST(AdoptionFoc, AbsentWhenSignsFixed) {
  AdoptionFocResult r = symmetric_adoption_foc(
      s0(), AdoptionCost::quadratic(0.2), {0.0, 2.0});
  EXPECT_FALSE(r.root.has_value());
  EXPECT_EQ(r.sign_changes, 0);
  EXPECT_FALSE(r.explanation.empty());
}

TEST(AdoptionFoc, ConstantMarginalRootAtZero) {
  AdoptionCost c = AdoptionCost::custom([](double A) { return -0.475 * A; },
                                        [](double) { return -0.475; });
  AdoptionFocResult r = symmetric_adoption_foc(s0(), c, {0.0, 2.0});
  ASSERT_TRUE(r.root.has_value());
  EXPECT_NEAR(*r.root, 0.0, 1e-10);
}

TEST(AdoptionFoc, DegenerateConstantsProfile) {
  AdoptionFocResult r =
      symmetric_adoption_foc(testing::constants_profile(1.0, 2.0, 1.0, 0.05),
                             AdoptionCost::quadratic(0.0), {0.0, 1.0});
  EXPECT_TRUE(r.degenerate);
  EXPECT_EQ(r.degenerate_interval.lo, 0.0);
  EXPECT_EQ(r.degenerate_interval.hi, 1.0);
  EXPECT_FALSE(r.root.has_value());
}

TEST(AdoptionFoc, InteriorRootSolvesCondition) {
  // Negative constant marginal cost below dProfit/dA(0) crosses it inside.
  AdoptionCost c = AdoptionCost::custom([](double A) { return -0.2 * A; },
                                        [](double) { return -0.2; });
  AdoptionFocResult r = symmetric_adoption_foc(s0(), c, {0.0, 2.0});
  ASSERT_TRUE(r.root.has_value());
  EXPECT_NEAR(comparative_statics(s0(), *r.root).dProfit, -0.2, 1e-8);
}

}  // namespace
}  // namespace centripetal

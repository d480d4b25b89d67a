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
#include <random>
#include <vector>

#include "centripetal/policy.hpp"
#include "test_support.hpp"

namespace centripetal {
namespace {

using testing::s0;

PrimitiveShift kappa_up(double dk) {
  PrimitiveShift s;
  s.delta_kappa = dk;
  return s;
}

TEST(ApplyShift, RejectsNonPositiveLevels) {
  PrimitiveValues v = s0().eval(0.0);
  EXPECT_THROW(apply_shift(v, {-1.0, 0.0, 0.0, 0.0}), ShiftRejected);
  EXPECT_THROW(apply_shift(v, {0.0, -2.5, 0.0, 0.0}), ShiftRejected);
  PrimitiveValues w = apply_shift(v, {0.1, 0.5, -0.01, -0.2});
  EXPECT_DOUBLE_EQ(w.t, 1.1);
  EXPECT_DOUBLE_EQ(w.kappa, 2.5);
  EXPECT_DOUBLE_EQ(w.F, 0.04);
  EXPECT_DOUBLE_EQ(w.c, 0.8);
}

TEST(MergerScreen, KappaIncreaseBlocks) {
  ScreenVerdict v = merger_screen(s0(), 0.0, kappa_up(0.5), 0.05, 0.06);
  EXPECT_DOUBLE_EQ(v.M_pre, 0.5);
  EXPECT_DOUBLE_EQ(v.M_post, 0.4);
  EXPECT_NEAR(v.V_pre, 0.075, 1e-16);
  EXPECT_NEAR(v.V_post, 0.05, 1e-16);
  EXPECT_FALSE(v.condition_i);
  EXPECT_FALSE(v.condition_ii);
  EXPECT_FALSE(v.approve);
  EXPECT_DOUBLE_EQ(v.delta_M_first_order, -0.125);
  EXPECT_DOUBLE_EQ(v.delta_V_first_order, -0.03125);
  EXPECT_NEAR(v.delta_M_exact, -0.1, 1e-15);
  EXPECT_NEAR(v.delta_V_exact, -0.025, 1e-15);
}

TEST(MergerScreen, ZeroShiftApproves) {
  ScreenVerdict v = merger_screen(s0(), 0.0, {}, 0.0, 0.075);
  EXPECT_TRUE(v.approve);
  EXPECT_EQ(v.delta_M_exact, 0.0);
}

TEST(MergerScreen, CostSynergyAloneNeverMovesScreen) {
  PrimitiveShift s;
  s.delta_c = -0.5;
  ScreenVerdict pass = merger_screen(s0(), 0.0, s, 0.0, 0.07);
  EXPECT_EQ(pass.M_post, pass.M_pre);
  EXPECT_EQ(pass.V_post, pass.V_pre);
  EXPECT_TRUE(pass.approve);
  ScreenVerdict fail = merger_screen(s0(), 0.0, s, 0.0, 0.08);
  EXPECT_FALSE(fail.approve);
}

TEST(MergerScreen, IdentitiesOnRandomShifts) {
  testing::ConfigGen gen(71);
  for (int i = 0; i < 100; ++i) {
    PrimitiveShift s{gen.uniform(-0.3, 0.3), gen.uniform(-1.0, 1.0),
                     gen.uniform(-0.05, 0.05), gen.uniform(-0.3, 0.3)};
    double dbar = gen.uniform(0.0, 0.2), eps = gen.uniform(0.001, 0.1);
    ScreenVerdict v = merger_screen(s0(), 0.0, s, dbar, eps);
    EXPECT_EQ(v.approve, v.condition_i && v.condition_ii);
    EXPECT_EQ(v.condition_i, v.M_post >= v.M_pre - dbar);
    EXPECT_EQ(v.condition_ii, v.V_post >= eps);
    EXPECT_EQ(v.delta_V_exact, v.delta_M_exact / 4.0 - s.delta_F);
    // Independent recomputation of the post-shift statistics.
    double t = 1.0 + s.delta_t, k = 2.0 + s.delta_kappa;
    EXPECT_NEAR(v.M_post, t * t / k, 1e-15);
    EXPECT_NEAR(v.V_post, t * t / (4 * k) - (0.05 + s.delta_F), 1e-15);
  }
}

TEST(MergerScreen, TolerancesMandatory) {
  EXPECT_THROW(merger_screen(s0(), 0.0, {}, 0.05, 0.0), ArgumentError);
  EXPECT_THROW(merger_screen(s0(), 0.0, {}, -0.01, 0.06), ArgumentError);
  EXPECT_THROW(merger_screen(s0(), 0.0, kappa_up(-3.0), 0.05, 0.06),
               ShiftRejected);
}

TEST(Remedy, FixedCostCutRaisesViabilityOnly) {
  PrimitiveShift s;
  s.delta_F = -0.02;
  RemedyReport r = remedy_counterfactual(s0(), 0.0, s);
  EXPECT_NEAR(r.post.V - r.pre.V, 0.02, 1e-16);
  EXPECT_NEAR(r.post.V, 0.095, 1e-16);
  EXPECT_EQ(r.post.M, r.pre.M);
  EXPECT_DOUBLE_EQ(r.attribution.dV_dF, -1.0);
}

TEST(Remedy, TransportIncrease) {
  PrimitiveShift s;
  s.delta_t = 0.1;
  RemedyReport r = remedy_counterfactual(s0(), 0.0, s);
  EXPECT_NEAR(r.post.d_star, 0.55, 1e-15);
  EXPECT_NEAR(r.post.p_star, 1.605, 1e-15);
  EXPECT_NEAR(r.post.M, 0.605, 1e-15);
  EXPECT_DOUBLE_EQ(r.attribution.dp_dt, 1.0);
  EXPECT_DOUBLE_EQ(r.attribution.dd_dt, 0.5);
}

TEST(Remedy, ThresholdMovesWithFixedCost) {
  PrimitiveShift s;
  s.delta_F = -0.02;
  RemedyReport r = remedy_counterfactual(s0(), 0.0, s, Interval{0.0, 2.0});
  ASSERT_TRUE(r.threshold_pre && r.threshold_post);
  ASSERT_TRUE(r.threshold_pre->A_E && r.threshold_post->A_E);
  EXPECT_GT(*r.threshold_post->A_E, *r.threshold_pre->A_E);
}

TEST(Estimation, ExactInversion) {
  EstimationInputs in;
  in.cross_price_slope = 1.0;
  in.probes = {{0.1, 0.02}, {0.2, 0.08}};
  in.p_obs = 1.5;
  EstimationResult r = estimate_primitives(in);
  EXPECT_NEAR(r.kappa_hat, 2.0, 1e-14);
  EXPECT_NEAR(r.t_hat, 1.0, 1e-14);
  ASSERT_TRUE(r.c_hat.has_value());
  EXPECT_NEAR(*r.c_hat, 1.0, 1e-14);
  EXPECT_TRUE(r.consistent);
}

TEST(Estimation, KnownKappa) {
  EstimationInputs in;
  in.cross_price_slope = 8.0;
  in.p_obs = 2.0 / 3.0 + 0.0625;
  EstimationResult r = estimate_primitives(in, 4.0);
  EXPECT_DOUBLE_EQ(r.t_hat, 0.5);
  EXPECT_NEAR(*r.c_hat, 2.0 / 3.0, 1e-15);
}

TEST(Estimation, NoisyProbesWithinTwoPercent) {
  std::mt19937_64 rng(72);
  std::normal_distribution<double> noise(0.0, 0.01);
  EstimationInputs in;
  in.cross_price_slope = 1.0;
  for (int i = 1; i <= 20; ++i) {
    double delta = 0.025 * i;
    in.probes.push_back({delta, 2.0 * delta * delta * (1.0 + noise(rng))});
  }
  EXPECT_NEAR(estimate_primitives(in).kappa_hat, 2.0, 0.04);
}

TEST(Estimation, RoundTripOnRandomDraws) {
  testing::ConfigGen gen(73);
  for (int i = 0; i < 20; ++i) {
    double t = gen.uniform(0.1, 5.0), k = gen.uniform(0.1, 10.0);
    double c = gen.uniform(0.0, 5.0), F = gen.uniform(0.0, 1.0);
    double base = gen.uniform(0.5, 10.0);
    EstimationInputs in;
    in.cross_price_slope = k / (2 * t * t);
    for (double delta : {0.05, 0.13, 0.4}) {
      in.probes.push_back({delta, k * delta * delta});
    }
    in.p_obs = c + t * t / k;
    in.fixed_outlays = F * base;
    in.amortization_base = base;
    EstimationResult r = estimate_primitives(in);
    EXPECT_LT(testing::rel_err(r.kappa_hat, k), 1e-10);
    EXPECT_LT(testing::rel_err(r.t_hat, t), 1e-10);
    if (c > 1e-3) EXPECT_LT(testing::rel_err(*r.c_hat, c), 1e-10);
    if (F > 1e-3) EXPECT_LT(testing::rel_err(r.F_hat, F), 1e-10);
  }
}

TEST(Estimation, NegativeCostFlagsInconsistency) {
  EstimationInputs in;
  in.cross_price_slope = 1.0;
  in.probes = {{0.1, 0.02}};
  in.p_obs = 0.3;
  EstimationResult r = estimate_primitives(in);
  EXPECT_FALSE(r.consistent);
  EXPECT_FALSE(r.warnings.empty());
}

TEST(Estimation, BadInputs) {
  EstimationInputs in;
  in.cross_price_slope = 1.0;
  EXPECT_THROW(estimate_primitives(in), ArgumentError);  // no probes
  in.probes = {{0.1, 0.02}, {-0.1, 0.02}};
  EXPECT_THROW(estimate_primitives(in), ArgumentError);  // repeated |delta|
  in.probes = {{0.1, -0.02}};
  EXPECT_THROW(estimate_primitives(in), EstimationError);
  in.cross_price_slope = 0.0;
  EXPECT_THROW(estimate_primitives(in, 2.0), ArgumentError);
}

TEST(StressTest, ReferenceGridFirstFlag) {
  std::vector<double> grid;
  for (int i = 0; i <= 20; ++i) grid.push_back(0.05 * i);
  StressReport r = stress_test(s0(), grid, 0.0);
  ASSERT_TRUE(r.first_flag.has_value());
  EXPECT_DOUBLE_EQ(grid[*r.first_flag], 0.25);
  ASSERT_TRUE(r.remedies.has_value());
  double V = conduct_viability(s0(), 0.25).V;
  EXPECT_EQ(r.remedies->required_dF, V);
  EXPECT_LT(r.remedies->required_dF, 0.0);
  // Restoring moves bring V back to the floor.
  PrimitiveValues v = s0().eval(0.25);
  double k = v.kappa + *r.remedies->required_dkappa;
  EXPECT_NEAR(v.t * v.t / (4 * k) - v.F, 0.0, 1e-15);
  double t = v.t + *r.remedies->required_dt;
  EXPECT_NEAR(t * t / (4 * v.kappa) - v.F, 0.0, 1e-15);
}

TEST(StressTest, VeryLowFloorNoFlags) {
  std::vector<double> grid{0.0, 0.5, 1.0};
  StressReport r = stress_test(s0(), grid, -1e9);
  EXPECT_FALSE(r.first_flag.has_value());
  EXPECT_FALSE(r.remedies.has_value());
  for (const auto& row : r.rows) EXPECT_FALSE(row.flagged);
}

}  // namespace
}  // namespace centripetal

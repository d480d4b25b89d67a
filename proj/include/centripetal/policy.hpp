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

// Enforcement-side computations on top of the closed forms: the two-condition
// merger screen, remedy counterfactuals, estimation of the primitives from
// observables, and homogenization stress tests.

#ifndef CENTRIPETAL_POLICY_HPP_
#define CENTRIPETAL_POLICY_HPP_

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "centripetal/duopoly.hpp"
#include "centripetal/entry.hpp"
#include "centripetal/primitives.hpp"

namespace centripetal {

// Additive shifts of the primitive levels at a fixed capability.
struct PrimitiveShift {
  double delta_t = 0.0;
  double delta_kappa = 0.0;
  double delta_F = 0.0;
  double delta_c = 0.0;
};

// Throws ShiftRejected when t or kappa would become non-positive.
PrimitiveValues apply_shift(const PrimitiveValues& v,
                            const PrimitiveShift& shift);

struct ScreenVerdict {
  double M_pre = 0.0;
  double M_post = 0.0;
  double V_pre = 0.0;
  double V_post = 0.0;
  bool condition_i = false;   // M_post >= M_pre - delta_bar_M
  bool condition_ii = false;  // V_post >= eps_bar
  bool approve = false;
  double delta_M_exact = 0.0;
  double delta_V_exact = 0.0;  // delta_M_exact / 4 - delta_F
  double delta_M_first_order = 0.0;
  double delta_V_first_order = 0.0;
};

// Tolerances are mandatory: eps_bar > 0, delta_bar_M >= 0.
ScreenVerdict merger_screen(const CapabilityProfile& profile, double A,
                            const PrimitiveShift& shift, double delta_bar_M,
                            double eps_bar);

struct MarketState {
  double M = 0.0;
  double V = 0.0;
  double d_star = 0.0;
  double p_star = 0.0;
  double profit = 0.0;
};

// Partial effects at the pre-shift point.
struct RemedyAttribution {
  double dV_dF = -1.0;
  double dd_dt = 0.0;      // 1 / kappa
  double dp_dt = 0.0;      // 2 t / kappa
  double dd_dkappa = 0.0;  // -t / kappa^2
  double dM_dt = 0.0;      // 2 t / kappa
  double dM_dkappa = 0.0;  // -t^2 / kappa^2
};

struct RemedyReport {
  MarketState pre;
  MarketState post;
  RemedyAttribution attribution;
  std::optional<EntryReport> threshold_pre;
  std::optional<EntryReport> threshold_post;  // shift applied at every A
};

RemedyReport remedy_counterfactual(
    const CapabilityProfile& profile, double A, const PrimitiveShift& shift,
    std::optional<Interval> threshold_search = std::nullopt,
    double tol_A = 1e-4);

struct ProbeObservation {
  double delta = 0.0;    // distance moved away from the template
  double delta_K = 0.0;  // incremental resource cost of the move
};

struct EstimationInputs {
  double cross_price_slope = 0.0;  // observed dD1/dp2
  std::vector<ProbeObservation> probes;
  std::optional<double> p_obs;
  double fixed_outlays = 0.0;
  double amortization_base = 1.0;  // output (or periods) the outlays cover
};

struct EstimationResult {
  double t_hat = 0.0;
  double kappa_hat = 0.0;
  std::optional<double> c_hat;
  double F_hat = 0.0;
  double M = 0.0;
  double V = 0.0;
  bool consistent = true;
  std::vector<std::string> warnings;
};

// kappa from least squares of delta_K on delta^2 through the origin (unless
// kappa_known), then t = sqrt(kappa / (2 S)), c = p - t^2/kappa and
// F = outlays / base.
EstimationResult estimate_primitives(const EstimationInputs& inputs,
                                     std::optional<double> kappa_known = {});

struct StressRow {
  double A = 0.0;
  double M = 0.0;
  double V = 0.0;
  bool flagged = false;  // V < v_floor
};

// Smallest single-primitive moves restoring V >= v_floor at the first
// flagged capability.
struct RestoringRemedies {
  double A = 0.0;
  double V = 0.0;
  double required_dF = 0.0;                  // V - v_floor (<= 0)
  std::optional<double> required_dkappa;     // <= 0
  std::optional<double> required_dt;         // >= 0
};

struct StressReport {
  std::vector<StressRow> rows;
  std::optional<std::size_t> first_flag;
  std::optional<RestoringRemedies> remedies;
};

StressReport stress_test(const CapabilityProfile& profile,
                         std::span<const double> A_grid, double v_floor);

}  // namespace centripetal

#endif  // CENTRIPETAL_POLICY_HPP_

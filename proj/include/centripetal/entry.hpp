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

// Conduct and viability statistics, the capability entry threshold, and the
// N-firm circular-city firm count.

#ifndef CENTRIPETAL_ENTRY_HPP_
#define CENTRIPETAL_ENTRY_HPP_

#include <optional>
#include <utility>
#include <vector>

#include "centripetal/primitives.hpp"

namespace centripetal {

struct ConductViability {
  double M = 0.0;  // t^2 / kappa
  double V = 0.0;  // t^2 / (4 kappa) - F
};

ConductViability conduct_viability(const CapabilityProfile& profile, double A);

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
};

enum class EntryStatus { kThreshold, kViableEverywhere, kViableNowhere };

const char* to_string(EntryStatus status);

// Bounds on the threshold from the parametric rearrangement; apply when
// g(0) = tau0^2 / (4 kappa0) exceeds F0 and phi > 0.
struct AnalyticBounds {
  double lower = 0.0;  // (g(0) - F0) / (phi + |g'(0)|)
  double upper = 0.0;  // (g(0) - F0) / phi
};

struct EntryReport {
  EntryStatus status = EntryStatus::kViableNowhere;
  std::optional<double> A_E;
  Interval bracket;          // certified to contain A_E
  double M = 0.0;            // at A_E, or at search.lo when there is none
  double V = 0.0;
  int crossings_found = 0;
  std::optional<AnalyticBounds> analytic_bounds;
  bool bounds_contain_threshold = true;
};

// Scans V on `coarse_points` (>= 256) evenly spaced capabilities, then
// bisects the single sign change down to a bracket narrower than tol_A.
// Throws MonotonicityError when V changes sign more than once.
EntryReport entry_threshold(const CapabilityProfile& profile, Interval search,
                            double tol_A, int coarse_points = 257);

struct SalopOutcome {
  double N_stated = 0.0;         // C * sqrt(t / (kappa F))
  double N_stated_floor = 1.0;   // max(1, floor(N_stated))
  int N_free_entry = 0;          // largest N with a t / N^2 >= F + b kappa / N^2
  double markup_scale = 0.0;     // t / N_stated
};

// Both firm-count readings are reported side by side: the stated
// proportionality and the count implied by the free-entry balance.
SalopOutcome salop_structure(const CapabilityProfile& profile, double A,
                             double C, double a, double b);

}  // namespace centripetal

#endif  // CENTRIPETAL_ENTRY_HPP_

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

#include "centripetal/entry.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "centripetal/kernels.hpp"

namespace centripetal {

ConductViability conduct_viability(const CapabilityProfile& profile,
                                   double A) {
  const PrimitiveValues v = profile.eval(A);
  ConductViability out;
  out.M = conduct_statistic(v.t, v.kappa);
  out.V = out.M / 4.0 - v.F;
  return out;
}

const char* to_string(EntryStatus status) {
  switch (status) {
    case EntryStatus::kThreshold:
      return "threshold";
    case EntryStatus::kViableEverywhere:
      return "viable_everywhere";
    case EntryStatus::kViableNowhere:
      return "viable_nowhere";
  }
  return "unknown";
}

EntryReport entry_threshold(const CapabilityProfile& profile, Interval search,
                            double tol_A, int coarse_points) {
  if (!(search.lo < search.hi) || !std::isfinite(search.lo) ||
      !std::isfinite(search.hi)) {
    throw ArgumentError("entry_threshold: search interval needs lo < hi");
  }
  if (!(tol_A > 0.0)) throw ArgumentError("entry_threshold: tol_A must be > 0");
  if (coarse_points < 256) {
    throw ArgumentError("entry_threshold: coarse scan needs >= 256 points");
  }
  if (!profile.domain().contains(search.lo) ||
      !profile.domain().contains(search.hi)) {
    throw DomainError("entry_threshold: search interval leaves the domain");
  }

  const auto n = static_cast<std::size_t>(coarse_points);
  std::vector<double> grid(n);
  const double width = search.hi - search.lo;
  for (std::size_t i = 0; i < n; ++i) {
    grid[i] = search.lo + width * static_cast<double>(i) /
                              static_cast<double>(n - 1);
  }
  grid.back() = search.hi;

  std::vector<double> M(n);
  std::vector<double> V(n);
  if (const ParametricFamily* family = profile.family()) {
    kernels::parametric_conduct_viability(*family, grid, M, V);
  } else {
    for (std::size_t i = 0; i < n; ++i) {
      const ConductViability cv = conduct_viability(profile, grid[i]);
      M[i] = cv.M;
      V[i] = cv.V;
    }
  }

  std::vector<std::pair<double, double>> changes;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    if ((V[i] > 0.0) != (V[i + 1] > 0.0)) {
      changes.emplace_back(grid[i], grid[i + 1]);
    }
  }

  EntryReport report;
  report.crossings_found = static_cast<int>(changes.size());

  if (const ParametricFamily* f = profile.family()) {
    const double g0 = f->tau0 * f->tau0 / (4.0 * f->kappa0);
    if (g0 > f->F0 && f->phi > 0.0) {
      const double dg0 = -g0 * (2.0 * f->beta + f->gamma);
      report.analytic_bounds =
          AnalyticBounds{(g0 - f->F0) / (f->phi + std::fabs(dg0)),
                         (g0 - f->F0) / f->phi};
    }
  }

  if (changes.size() > 1) {
    std::ostringstream os;
    os << "viability changes sign " << changes.size()
       << " times; single-crossing premise violated on";
    for (const auto& [a, b] : changes) os << " [" << a << ", " << b << "]";
    throw MonotonicityError(os.str(), std::move(changes));
  }

  if (changes.empty()) {
    report.status = V.front() > 0.0 ? EntryStatus::kViableEverywhere
                                    : EntryStatus::kViableNowhere;
    report.M = M.front();
    report.V = V.front();
    return report;
  }

  double lo = changes.front().first;
  double hi = changes.front().second;
  const bool viable_lo = conduct_viability(profile, lo).V > 0.0;
  while (hi - lo >= tol_A) {
    const double mid = 0.5 * (lo + hi);
    if ((conduct_viability(profile, mid).V > 0.0) == viable_lo) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  const double root = 0.5 * (lo + hi);
  const ConductViability at = conduct_viability(profile, root);
  report.status = EntryStatus::kThreshold;
  report.A_E = root;
  report.bracket = {lo, hi};
  report.M = at.M;
  report.V = at.V;
  if (report.analytic_bounds) {
    report.bounds_contain_threshold =
        root >= report.analytic_bounds->lower - tol_A &&
        root <= report.analytic_bounds->upper + tol_A;
  }
  return report;
}

SalopOutcome salop_structure(const CapabilityProfile& profile, double A,
                             double C, double a, double b) {
  if (!(C > 0.0)) throw ArgumentError("salop_structure: C must be > 0");
  if (!(a > 0.0)) throw ArgumentError("salop_structure: a must be > 0");
  if (!(b >= 0.0)) throw ArgumentError("salop_structure: b must be >= 0");
  const PrimitiveValues v = profile.eval(A);
  if (!(v.F > 0.0)) {
    throw ArgumentError("salop_structure: F(A) = 0 leaves N undefined");
  }
  SalopOutcome out;
  out.N_stated = C * std::sqrt(v.t / (v.kappa * v.F));
  out.N_stated_floor = std::max(1.0, std::floor(out.N_stated));
  out.markup_scale = v.t / out.N_stated;

  const double net = a * v.t - b * v.kappa;
  if (net > 0.0) {
    // Balance a t - b kappa >= F N^2, checked on integers directly.
    auto fits = [&](long n) {
      return net >= v.F * static_cast<double>(n) * static_cast<double>(n);
    };
    long n = static_cast<long>(std::floor(std::sqrt(net / v.F)));
    while (fits(n + 1)) ++n;
    while (n > 0 && !fits(n)) --n;
    out.N_free_entry = static_cast<int>(n);
  }
  return out;
}

}  // namespace centripetal

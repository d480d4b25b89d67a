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

// Capability-indexed model primitives: transport intensity t(A), originality
// curvature kappa(A), marginal cost c(A) and fixed cost F(A).
//
// A profile is either the closed-form parametric family
//
//   t(A) = tau0 / (1 + beta A)      kappa(A) = kappa0 (1 + gamma A)
//   c(A) = c0 / (1 + eta A)         F(A)     = F0 + phi A
//
// or a table of primitive levels interpolated with monotone (PCHIP) cubics,
// whose derivatives come from the interpolant itself.

#ifndef CENTRIPETAL_PRIMITIVES_HPP_
#define CENTRIPETAL_PRIMITIVES_HPP_

#include <limits>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "centripetal/errors.hpp"

namespace centripetal {

struct ParametricFamily {
  double tau0 = 1.0;
  double beta = 0.0;
  double kappa0 = 1.0;
  double gamma = 0.0;
  double c0 = 1.0;
  double eta = 0.0;
  double F0 = 0.0;
  double phi = 0.0;

  // Field-level problems, paths relative to the family ("tau0", ...).
  std::vector<FieldError> validate() const;
};

struct PrimitiveValues {
  double A = 0.0;
  double t = 0.0;
  double kappa = 0.0;
  double c = 0.0;
  double F = 0.0;
  double dt = 0.0;
  double dkappa = 0.0;
  double dc = 0.0;
  double dF = 0.0;
};

struct CapabilityDomain {
  double lo = 0.0;
  double hi = std::numeric_limits<double>::infinity();

  bool contains(double A) const { return A >= lo && A <= hi; }
};

// Primitive levels on strictly increasing capability nodes (at least 4).
struct PrimitiveTable {
  std::vector<double> A;
  std::vector<double> t;
  std::vector<double> kappa;
  std::vector<double> c;
  std::vector<double> F;

  std::vector<FieldError> validate() const;
};

// Additive offsets applied to every evaluated level. Derivatives are
// unaffected.
struct PrimitiveOffsets {
  double t = 0.0;
  double kappa = 0.0;
  double c = 0.0;
  double F = 0.0;
};

class CapabilityProfile {
 public:
  static CapabilityProfile parametric(const ParametricFamily& family,
                                      CapabilityDomain domain = {});
  static CapabilityProfile tabulated(const PrimitiveTable& table);

  PrimitiveValues eval(double A) const;

  const CapabilityDomain& domain() const { return domain_; }

  // Non-null only for an unshifted parametric profile.
  const ParametricFamily* family() const;

  // Copy of this profile with level offsets added.
  CapabilityProfile with_offsets(const PrimitiveOffsets& offsets) const;

 private:
  struct Table;

  CapabilityProfile() = default;

  std::optional<ParametricFamily> family_;
  std::shared_ptr<const Table> table_;
  PrimitiveOffsets offsets_;
  bool has_offsets_ = false;
  CapabilityDomain domain_;
};

PrimitiveValues eval_profile(const CapabilityProfile& profile, double A);

struct ValidationPoint {
  double A = 0.0;
  bool t_decreasing = false;      // t' < 0
  bool kappa_increasing = false;  // kappa' > 0
  bool c_nonincreasing = false;   // c' <= 0
  bool F_increasing = false;      // F' > 0 (strict)
  bool F_nondecreasing = false;   // F' >= 0
  double ratio = 0.0;             // t / kappa, the unconstrained d*
  bool feasible = false;          // 0 < t/kappa < 1
};

struct ValidationReport {
  std::vector<ValidationPoint> points;
  bool signs_hold = true;     // all strict restrictions at every point
  bool F_weakly_holds = true;
  bool feasible = true;
};

// Sign restrictions and interior-location feasibility on a grid. Violations
// are reported, never repaired.
ValidationReport validate_profile(const CapabilityProfile& profile,
                                  std::span<const double> grid);

struct HomogenizationRatio {
  double mu = 0.0;  // t^2 / kappa
  double g = 0.0;   // mu / 4, the gross margin
};

HomogenizationRatio homogenization_ratio(const CapabilityProfile& profile,
                                         double A);

// t^2/kappa evaluated as t * (t / kappa). Every module uses this one
// expression so that d*, markup and M agree bit-for-bit.
inline double conduct_statistic(double t, double kappa) {
  return t * (t / kappa);
}

}  // namespace centripetal

#endif  // CENTRIPETAL_PRIMITIVES_HPP_

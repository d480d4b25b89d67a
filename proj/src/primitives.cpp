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

#include "centripetal/primitives.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <utility>

// pchip.hpp calls isnan unqualified; <math.h> puts it in the global scope.
#include <math.h>

#include <boost/math/interpolators/pchip.hpp>

namespace centripetal {

namespace {

using Pchip = boost::math::interpolators::pchip<std::vector<double>>;

std::string describe(const std::vector<FieldError>& errors) {
  std::ostringstream os;
  os << "invalid configuration:";
  for (const auto& e : errors) os << ' ' << e.path << " (" << e.message << ");";
  return os.str();
}

bool finite_all(const PrimitiveValues& v) {
  return std::isfinite(v.t) && std::isfinite(v.kappa) && std::isfinite(v.c) &&
         std::isfinite(v.F) && std::isfinite(v.dt) &&
         std::isfinite(v.dkappa) && std::isfinite(v.dc) &&
         std::isfinite(v.dF);
}

}  // namespace

ValidationError::ValidationError(std::vector<FieldError> errors)
    : Error(describe(errors)), errors_(std::move(errors)) {}

std::vector<FieldError> ParametricFamily::validate() const {
  std::vector<FieldError> out;
  auto positive = [&](const char* name, double v) {
    if (!(std::isfinite(v) && v > 0.0)) out.push_back({name, "must be > 0"});
  };
  auto nonnegative = [&](const char* name, double v) {
    if (!(std::isfinite(v) && v >= 0.0)) out.push_back({name, "must be >= 0"});
  };
  positive("tau0", tau0);
  nonnegative("beta", beta);
  positive("kappa0", kappa0);
  nonnegative("gamma", gamma);
  positive("c0", c0);
  nonnegative("eta", eta);
  nonnegative("F0", F0);
  nonnegative("phi", phi);
  return out;
}

std::vector<FieldError> PrimitiveTable::validate() const {
  std::vector<FieldError> out;
  const std::size_t n = A.size();
  if (n < 4) out.push_back({"A", "needs at least 4 nodes"});
  auto same_size = [&](const char* name, const std::vector<double>& v) {
    if (v.size() != n) out.push_back({name, "length differs from A"});
  };
  same_size("t", t);
  same_size("kappa", kappa);
  same_size("c", c);
  same_size("F", F);
  for (std::size_t i = 1; i < n; ++i) {
    if (!(A[i] > A[i - 1])) {
      out.push_back({"A", "must be strictly increasing"});
      break;
    }
  }
  auto check = [&](const char* name, const std::vector<double>& v,
                   bool strict) {
    for (double x : v) {
      if (!std::isfinite(x) || (strict ? x <= 0.0 : x < 0.0)) {
        out.push_back({name, strict ? "entries must be > 0" : "entries must be >= 0"});
        return;
      }
    }
  };
  check("t", t, true);
  check("kappa", kappa, true);
  check("c", c, false);
  check("F", F, false);
  for (double x : A) {
    if (!std::isfinite(x)) {
      out.push_back({"A", "entries must be finite"});
      break;
    }
  }
  return out;
}

struct CapabilityProfile::Table {
  Pchip t;
  Pchip kappa;
  Pchip c;
  Pchip F;
};

CapabilityProfile CapabilityProfile::parametric(const ParametricFamily& family,
                                                CapabilityDomain domain) {
  auto errors = family.validate();
  if (!(domain.lo <= domain.hi) || std::isnan(domain.lo) ||
      std::isnan(domain.hi)) {
    errors.push_back({"domain", "requires lo <= hi"});
  } else {
    // The hyperbolic forms need 1 + rate * A > 0 over the whole domain.
    const double worst = std::max({family.beta, family.gamma, family.eta});
    if (1.0 + worst * domain.lo <= 0.0) {
      errors.push_back({"domain.lo", "primitives undefined at lower bound"});
    }
  }
  if (!errors.empty()) throw ValidationError(std::move(errors));
  CapabilityProfile p;
  p.family_ = family;
  p.domain_ = domain;
  return p;
}

CapabilityProfile CapabilityProfile::tabulated(const PrimitiveTable& table) {
  auto errors = table.validate();
  if (!errors.empty()) throw ValidationError(std::move(errors));
  auto make = [&](const std::vector<double>& y) {
    return Pchip(std::vector<double>(table.A), std::vector<double>(y));
  };
  CapabilityProfile p;
  p.table_ = std::make_shared<const Table>(
      Table{make(table.t), make(table.kappa), make(table.c), make(table.F)});
  p.domain_ = {table.A.front(), table.A.back()};
  return p;
}

const ParametricFamily* CapabilityProfile::family() const {
  if (!family_ || has_offsets_) return nullptr;
  return &*family_;
}

CapabilityProfile CapabilityProfile::with_offsets(
    const PrimitiveOffsets& offsets) const {
  CapabilityProfile p = *this;
  p.offsets_.t += offsets.t;
  p.offsets_.kappa += offsets.kappa;
  p.offsets_.c += offsets.c;
  p.offsets_.F += offsets.F;
  p.has_offsets_ = true;
  return p;
}

PrimitiveValues CapabilityProfile::eval(double A) const {
  if (!domain_.contains(A)) {
    std::ostringstream os;
    os << "capability " << A << " outside domain [" << domain_.lo << ", "
       << domain_.hi << "]";
    throw DomainError(os.str());
  }
  PrimitiveValues v;
  v.A = A;
  if (family_) {
    const ParametricFamily& f = *family_;
    const double bt = 1.0 + f.beta * A;
    const double et = 1.0 + f.eta * A;
    v.t = f.tau0 / bt;
    v.dt = -f.tau0 * f.beta / (bt * bt);
    v.kappa = f.kappa0 * (1.0 + f.gamma * A);
    v.dkappa = f.kappa0 * f.gamma;
    v.c = f.c0 / et;
    v.dc = -f.c0 * f.eta / (et * et);
    v.F = f.F0 + f.phi * A;
    v.dF = f.phi;
  } else {
    const Table& tb = *table_;
    v.t = tb.t(A);
    v.dt = tb.t.prime(A);
    v.kappa = tb.kappa(A);
    v.dkappa = tb.kappa.prime(A);
    v.c = tb.c(A);
    v.dc = tb.c.prime(A);
    v.F = tb.F(A);
    v.dF = tb.F.prime(A);
  }
  if (has_offsets_) {
    v.t += offsets_.t;
    v.kappa += offsets_.kappa;
    v.c += offsets_.c;
    v.F += offsets_.F;
  }
  if (!finite_all(v)) {
    std::ostringstream os;
    os << "non-finite primitive values at A=" << A;
    throw EvaluationError(os.str());
  }
  if (!(v.t > 0.0) || !(v.kappa > 0.0)) {
    std::ostringstream os;
    os << "t and kappa must stay positive; got t=" << v.t
       << ", kappa=" << v.kappa << " at A=" << A;
    throw EvaluationError(os.str());
  }
  return v;
}

PrimitiveValues eval_profile(const CapabilityProfile& profile, double A) {
  return profile.eval(A);
}

ValidationReport validate_profile(const CapabilityProfile& profile,
                                  std::span<const double> grid) {
  if (grid.empty()) throw ArgumentError("validate_profile: empty grid");
  ValidationReport report;
  report.points.reserve(grid.size());
  for (double A : grid) {
    const PrimitiveValues v = profile.eval(A);
    ValidationPoint p;
    p.A = A;
    p.t_decreasing = v.dt < 0.0;
    p.kappa_increasing = v.dkappa > 0.0;
    p.c_nonincreasing = v.dc <= 0.0;
    p.F_increasing = v.dF > 0.0;
    p.F_nondecreasing = v.dF >= 0.0;
    p.ratio = v.t / v.kappa;
    p.feasible = p.ratio > 0.0 && p.ratio < 1.0;
    report.signs_hold = report.signs_hold && p.t_decreasing &&
                        p.kappa_increasing && p.c_nonincreasing &&
                        p.F_increasing;
    report.F_weakly_holds = report.F_weakly_holds && p.F_nondecreasing;
    report.feasible = report.feasible && p.feasible;
    report.points.push_back(p);
  }
  return report;
}

HomogenizationRatio homogenization_ratio(const CapabilityProfile& profile,
                                         double A) {
  const PrimitiveValues v = profile.eval(A);
  HomogenizationRatio r;
  r.mu = conduct_statistic(v.t, v.kappa);
  r.g = r.mu / 4.0;
  return r;
}

}  // namespace centripetal

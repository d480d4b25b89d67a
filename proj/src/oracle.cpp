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

#include "centripetal/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "centripetal/kernels.hpp"

namespace centripetal {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::size_t nearest_index(const std::vector<double>& grid, double lo,
                          double step, double x) {
  if (grid.size() == 1) return 0;
  const double raw = std::round((x - lo) / step);
  if (!(raw > 0.0)) return 0;
  const auto idx = static_cast<std::size_t>(raw);
  return std::min(idx, grid.size() - 1);
}

std::vector<double> window(double center, double half_width, double step,
                           double lo, double hi) {
  GridSpec w;
  w.lo = std::max(lo, center - half_width);
  w.hi = std::min(hi, center + half_width);
  w.step = step;
  return w.points();
}

struct PriceSolve {
  double p1 = 0.0;
  double p2 = 0.0;
  int iterations = 0;
  bool converged = false;
};

PriceSolve alternate_best_responses(const MarketConfig& config,
                                    const std::vector<double>& g1,
                                    const std::vector<double>& g2,
                                    double step, double start1, double start2,
                                    int max_iters, double tol_abs) {
  // Demand slope from primitives only: f(1/2) / (2 t d).
  const double slope = config.f_half / (2.0 * config.t * config.d);
  std::size_t i1 = nearest_index(g1, g1.front(), step, start1);
  std::size_t i2 = nearest_index(g2, g2.front(), step, start2);
  PriceSolve out;
  for (int it = 1; it <= max_iters; ++it) {
    const std::size_t n1 =
        kernels::best_response_index(g1, config.c1, g2[i2], slope);
    const std::size_t n2 =
        kernels::best_response_index(g2, config.c2, g1[n1], slope);
    const bool repeat = std::fabs(g1[n1] - g1[i1]) <= tol_abs &&
                        std::fabs(g2[n2] - g2[i2]) <= tol_abs;
    i1 = n1;
    i2 = n2;
    out.iterations = it;
    if (repeat) {
      out.converged = true;
      break;
    }
  }
  out.p1 = g1[i1];
  out.p2 = g2[i2];
  return out;
}

}  // namespace

void GridSpec::validate() const {
  if (!std::isfinite(lo) || !std::isfinite(hi) || !(lo <= hi)) {
    throw ArgumentError("grid: requires finite lo <= hi");
  }
  if (!(step > 0.0) || !std::isfinite(step)) {
    throw ArgumentError("grid: step must be > 0");
  }
  if ((hi - lo) / step > 1e7) {
    throw ArgumentError("grid: more than 1e7 points");
  }
  if (max_iters < 1) throw ArgumentError("grid: max_iters must be >= 1");
  if (!(tol >= 0.0)) throw ArgumentError("grid: tol must be >= 0");
  if (refinements < 0 || refinements > 12) {
    throw ArgumentError("grid: refinements must be in [0, 12]");
  }
}

std::vector<double> GridSpec::points() const {
  const auto n = static_cast<std::size_t>(
      std::floor((hi - lo) / step + 1e-9)) + 1;
  std::vector<double> pts(n);
  for (std::size_t k = 0; k < n; ++k) {
    pts[k] = lo + static_cast<double>(k) * step;
  }
  return pts;
}

OracleReport grid_price_nash(const MarketConfig& config,
                             const GridSpec& grid) {
  validate_config(config);
  grid.validate();

  const std::vector<double> coarse = grid.points();
  double step = grid.step;
  PriceSolve solve =
      alternate_best_responses(config, coarse, coarse, step, config.c1,
                               config.c2, grid.max_iters, grid.tol * step);
  int iterations = solve.iterations;
  bool converged = solve.converged;

  for (int r = 0; r < grid.refinements && converged && coarse.size() > 1;
       ++r) {
    const double fine = step / 10.0;
    const std::vector<double> g1 =
        window(solve.p1, 5.0 * step, fine, grid.lo, grid.hi);
    const std::vector<double> g2 =
        window(solve.p2, 5.0 * step, fine, grid.lo, grid.hi);
    solve = alternate_best_responses(config, g1, g2, fine, solve.p1, solve.p2,
                                     grid.max_iters, grid.tol * fine);
    iterations += solve.iterations;
    converged = solve.converged;
    step = fine;
  }

  OracleReport report;
  report.labels = {"p1", "p2"};
  report.values = {solve.p1, solve.p2};
  report.iterations = iterations;
  report.converged = converged;
  try {
    const PriceOutcome closed = price_equilibrium(config);
    report.closed_form = {closed.p1, closed.p2};
    report.residual = std::max(std::fabs(solve.p1 - closed.p1),
                               std::fabs(solve.p2 - closed.p2));
    report.excludes_optimum = report.residual > 2.0 * step;
  } catch (const TippingError&) {
    report.closed_form = {kNaN, kNaN};
    report.residual = kNaN;
  }
  return report;
}

OracleReport two_stage_grid_solve(const CapabilityProfile& profile, double A,
                                  const GridSpec& d_grid,
                                  const GridSpec& p_grid) {
  d_grid.validate();
  p_grid.validate();
  if (!(d_grid.lo > 0.0) || d_grid.hi > 1.0) {
    throw ArgumentError("two_stage_grid_solve: d grid must lie in (0, 1]");
  }
  const PrimitiveValues v = profile.eval(A);
  const std::vector<double> ds = d_grid.points();

  OracleReport report;
  report.converged = true;
  double best_profit = -std::numeric_limits<double>::infinity();
  std::size_t best = 0;
  for (std::size_t i = 0; i < ds.size(); ++i) {
    const MarketConfig config{ds[i], v.t, v.c, v.c, 1.0};
    const OracleReport prices = grid_price_nash(config, p_grid);
    report.iterations += prices.iterations;
    report.converged = report.converged && prices.converged;
    const double p1 = prices.values[0];
    const double p2 = prices.values[1];
    const double op_profit = (p1 - v.c) * firm1_demand(config, p1, p2);
    const double half = ds[i] / 2.0;
    const double profit = op_profit - v.kappa * half * half - v.F;
    if (profit > best_profit) {
      best_profit = profit;
      best = i;
    }
  }

  const EquilibriumPoint closed = equilibrium_from_primitives(v);
  report.labels = {"d", "profit"};
  report.values = {ds[best], best_profit};
  report.closed_form = {closed.d_star, closed.profit};
  report.residual = std::fabs(ds[best] - closed.d_star);
  report.boundary = ds.size() > 1 && (best == 0 || best + 1 == ds.size());
  report.excludes_optimum = report.residual > 2.0 * d_grid.step;
  return report;
}

double numeric_consumer_surplus(double d, double p, double t,
                                const Density& density, int panels) {
  if (!std::isfinite(d) || !std::isfinite(p) || !std::isfinite(t)) {
    throw ArgumentError("numeric_consumer_surplus: non-finite input");
  }
  if (panels < 2) throw ArgumentError("numeric_consumer_surplus: panels < 2");
  if (panels % 2 != 0) ++panels;

  const double h = 0.5 / panels;
  const std::size_t n = static_cast<std::size_t>(panels) + 1;
  std::vector<double> left(n, 1.0);
  std::vector<double> right(n, 1.0);
  if (density) {
    for (std::size_t i = 0; i < n; ++i) {
      left[i] = density(static_cast<double>(i) * h);
      right[i] = density(0.5 + static_cast<double>(i) * h);
    }
    // Integrand reduces to the density itself with price -1 and t = 0.
    const double mass = kernels::simpson_sum(left, 0.0, h, 0.0, -1.0, 0.0) +
                        kernels::simpson_sum(right, 0.5, h, 0.0, -1.0, 0.0);
    if (!(std::fabs(mass - 1.0) <= 1e-9)) {
      std::ostringstream os;
      os << "numeric_consumer_surplus: density integrates to " << mass
         << ", not 1";
      throw ArgumentError(os.str());
    }
  }
  const double x1 = 0.5 - d / 2.0;
  const double x2 = 0.5 + d / 2.0;
  return kernels::simpson_sum(left, 0.0, h, x1, p, t) +
         kernels::simpson_sum(right, 0.5, h, x2, p, t);
}

OracleReport finite_difference_check(const CapabilityProfile& profile,
                                     double A, double h) {
  if (!(h > 0.0) || !std::isfinite(h)) {
    throw ArgumentError("finite_difference_check: h must be > 0");
  }
  const CapabilityDomain& dom = profile.domain();
  if (!dom.contains(A - h) || !dom.contains(A + h)) {
    std::ostringstream os;
    os << "finite_difference_check: stencil [" << A - h << ", " << A + h
       << "] leaves the domain";
    throw StencilError(os.str());
  }
  const EquilibriumPoint lo = solve_equilibrium(profile, A - h);
  const EquilibriumPoint mid = solve_equilibrium(profile, A);
  const EquilibriumPoint hi = solve_equilibrium(profile, A + h);
  if (lo.boundary || mid.boundary || hi.boundary) {
    throw StencilError(
        "finite_difference_check: stencil touches the clamped d* regime");
  }
  const ComparativeStatics an = comparative_statics(profile, A);

  auto fd = [&](double EquilibriumPoint::*field) {
    return (hi.*field - lo.*field) / (2.0 * h);
  };

  OracleReport report;
  report.labels = {"d_star", "p_star", "slope_cross", "profit",
                   "markup", "viability", "cs"};
  report.values = {fd(&EquilibriumPoint::d_star),
                   fd(&EquilibriumPoint::p_star),
                   fd(&EquilibriumPoint::slope_cross),
                   fd(&EquilibriumPoint::profit),
                   fd(&EquilibriumPoint::markup),
                   (hi.markup / 4.0 - hi.F - (lo.markup / 4.0 - lo.F)) /
                       (2.0 * h),
                   fd(&EquilibriumPoint::cs)};
  report.closed_form = {an.dd_star, an.dp_star, an.dS,           an.dProfit,
                        an.dM,      an.dV,      an.cs_terms.total};
  double worst = 0.0;
  for (std::size_t i = 0; i < report.values.size(); ++i) {
    const double scale = std::max(std::fabs(report.closed_form[i]), 1e-8);
    worst = std::max(worst,
                     std::fabs(report.values[i] - report.closed_form[i]) /
                         scale);
  }
  report.residual = worst;
  report.converged = true;
  report.iterations = 3;
  return report;
}

}  // namespace centripetal

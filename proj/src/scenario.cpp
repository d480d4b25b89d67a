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


#include "centripetal/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <iterator>
#include <ostream>
#include <sstream>

#include "centripetal/duopoly.hpp"
#include "centripetal/oracle.hpp"

namespace centripetal {

using nlohmann::json;

std::vector<double> GridRange::points() const {
  std::vector<double> out;
  if (steps < 2) throw ArgumentError("grid needs at least 2 steps");
  out.reserve(static_cast<std::size_t>(steps));
  const double n = steps - 1;
  for (int i = 0; i < steps - 1; ++i) out.push_back(lo + (hi - lo) * i / n);
  out.push_back(hi);
  return out;
}

CapabilityProfile Scenario::profile() const {
  if (overrides) return CapabilityProfile::tabulated(*overrides);
  return CapabilityProfile::parametric(family, domain.value_or(CapabilityDomain{}));
}

ParametricFamily reference_family() {
  ParametricFamily f;
  f.tau0 = 1.0;
  f.beta = 1.0;
  f.kappa0 = 2.0;
  f.gamma = 1.0;
  f.c0 = 1.0;
  f.eta = 0.5;
  f.F0 = 0.05;
  f.phi = 0.1;
  return f;
}

Scenario reference_scenario() {
  Scenario s;
  s.name = "S0";
  s.family = reference_family();
  s.A_grid = {0.0, 1.0, 101};
  return s;
}

namespace {

std::string join(const std::string& prefix, const std::string& key) {
  return prefix.empty() ? key : prefix + "." + key;
}

// Collects field errors instead of stopping at the first one.
class Reader {
 public:
  std::vector<FieldError> errors;

  void fail(const std::string& path, const std::string& message) {
    errors.push_back({path, message});
  }

  const json* object(const json& parent, const std::string& key,
                     const std::string& path, bool required) {
    auto it = parent.find(key);
    if (it == parent.end() || it->is_null()) {
      if (required) fail(path, "required object is missing");
      return nullptr;
    }
    if (!it->is_object()) {
      fail(path, "expected an object");
      return nullptr;
    }
    return &*it;
  }

  // Finite number at parent[key]; `fallback` makes the field optional.
  double number(const json& parent, const std::string& key,
                const std::string& path, std::optional<double> fallback) {
    auto it = parent.find(key);
    if (it == parent.end() || it->is_null()) {
      if (!fallback) {
        fail(path, "required number is missing");
        return 0.0;
      }
      return *fallback;
    }
    if (!it->is_number()) {
      fail(path, "expected a number");
      return 0.0;
    }
    double v = it->get<double>();
    if (!std::isfinite(v)) fail(path, "must be finite");
    return v;
  }

  std::vector<double> array(const json& parent, const std::string& key,
                            const std::string& path) {
    std::vector<double> out;
    auto it = parent.find(key);
    if (it == parent.end() || !it->is_array()) {
      fail(path, "required numeric array is missing");
      return out;
    }
    for (std::size_t i = 0; i < it->size(); ++i) {
      const json& e = (*it)[i];
      if (!e.is_number()) {
        fail(path + "[" + std::to_string(i) + "]", "expected a number");
        out.push_back(0.0);
      } else {
        out.push_back(e.get<double>());
      }
    }
    return out;
  }

  void merge(const std::vector<FieldError>& sub, const std::string& prefix) {
    for (const auto& e : sub) fail(join(prefix, e.path), e.message);
  }
};

ParametricFamily read_family(Reader& r, const json& obj,
                             const std::string& prefix) {
  ParametricFamily f;
  f.tau0 = r.number(obj, "tau0", join(prefix, "tau0"), {});
  f.beta = r.number(obj, "beta", join(prefix, "beta"), {});
  f.kappa0 = r.number(obj, "kappa0", join(prefix, "kappa0"), {});
  f.gamma = r.number(obj, "gamma", join(prefix, "gamma"), {});
  f.c0 = r.number(obj, "c0", join(prefix, "c0"), {});
  f.eta = r.number(obj, "eta", join(prefix, "eta"), {});
  f.F0 = r.number(obj, "F0", join(prefix, "F0"), {});
  f.phi = r.number(obj, "phi", join(prefix, "phi"), {});
  return f;
}

PrimitiveShift read_shift(Reader& r, const json& obj,
                          const std::string& prefix) {
  PrimitiveShift s;
  s.delta_t = r.number(obj, "delta_t", join(prefix, "delta_t"), 0.0);
  s.delta_kappa =
      r.number(obj, "delta_kappa", join(prefix, "delta_kappa"), 0.0);
  s.delta_F = r.number(obj, "delta_F", join(prefix, "delta_F"), 0.0);
  s.delta_c = r.number(obj, "delta_c", join(prefix, "delta_c"), 0.0);
  return s;
}

ScreenParams read_screen(Reader& r, const json& obj,
                         const std::string& prefix) {
  ScreenParams p;
  p.A = r.number(obj, "A", join(prefix, "A"), 0.0);
  if (const json* s = r.object(obj, "shift", join(prefix, "shift"), true)) {
    p.shift = read_shift(r, *s, join(prefix, "shift"));
  }
  p.delta_bar_M = r.number(obj, "delta_bar_M", join(prefix, "delta_bar_M"), {});
  p.eps_bar = r.number(obj, "eps_bar", join(prefix, "eps_bar"), {});
  if (p.delta_bar_M < 0.0) {
    r.fail(join(prefix, "delta_bar_M"), "must be >= 0");
  }
  if (!(p.eps_bar > 0.0)) r.fail(join(prefix, "eps_bar"), "must be > 0");
  return p;
}

}  // namespace

ScreenParams screen_params_from_json(const json& doc,
                                     const std::string& prefix) {
  Reader r;
  if (!doc.is_object()) {
    r.fail(prefix.empty() ? "$" : prefix, "expected an object");
    throw ValidationError(r.errors);
  }
  ScreenParams p = read_screen(r, doc, prefix);
  if (!r.errors.empty()) throw ValidationError(r.errors);
  return p;
}

Scenario scenario_from_json(const json& doc) {
  Reader r;
  Scenario s;
  if (!doc.is_object()) {
    r.fail("$", "expected a JSON object");
    throw ValidationError(r.errors);
  }

  auto name = doc.find("name");
  if (name == doc.end() || !name->is_string() ||
      name->get<std::string>().empty()) {
    r.fail("name", "required non-empty string");
  } else {
    s.name = name->get<std::string>();
  }

  bool family_ok = false;
  if (const json* fam = r.object(doc, "family", "family", true)) {
    std::size_t before = r.errors.size();
    s.family = read_family(r, *fam, "family");
    // Range checks on fields that did read; unreadable ones already failed.
    for (const auto& e : s.family.validate()) {
      const std::string path = join("family", e.path);
      bool seen = false;
      for (std::size_t i = before; i < r.errors.size(); ++i) {
        seen = seen || r.errors[i].path == path;
      }
      if (!seen) r.fail(path, e.message);
    }
    family_ok = r.errors.size() == before;
  }

  bool table_ok = true;
  if (const json* ov = r.object(doc, "overrides", "overrides", false)) {
    std::size_t before = r.errors.size();
    PrimitiveTable table;
    table.A = r.array(*ov, "A", "overrides.A");
    table.t = r.array(*ov, "t", "overrides.t");
    table.kappa = r.array(*ov, "kappa", "overrides.kappa");
    table.c = r.array(*ov, "c", "overrides.c");
    table.F = r.array(*ov, "F", "overrides.F");
    if (r.errors.size() == before) r.merge(table.validate(), "overrides");
    table_ok = r.errors.size() == before;
    s.overrides = std::move(table);
  }

  if (const json* dom = r.object(doc, "domain", "domain", false)) {
    CapabilityDomain d;
    d.lo = r.number(*dom, "lo", "domain.lo", 0.0);
    auto hi = dom->find("hi");
    if (hi != dom->end() && !hi->is_null()) {
      d.hi = r.number(*dom, "hi", "domain.hi", {});
    }
    if (!(d.lo < d.hi)) r.fail("domain", "lo must be < hi");
    s.domain = d;
  }

  bool grid_ok = false;
  if (const json* g = r.object(doc, "A_grid", "A_grid", true)) {
    std::size_t before = r.errors.size();
    s.A_grid.lo = r.number(*g, "lo", "A_grid.lo", {});
    s.A_grid.hi = r.number(*g, "hi", "A_grid.hi", {});
    auto steps = g->find("steps");
    if (steps == g->end() || !steps->is_number_integer()) {
      r.fail("A_grid.steps", "required integer");
    } else {
      auto n = steps->get<long long>();
      if (n < 2 || n > 10'000'000) {
        r.fail("A_grid.steps", "must be >= 2");
      } else {
        s.A_grid.steps = static_cast<int>(n);
      }
    }
    if (r.errors.size() == before && !(s.A_grid.lo < s.A_grid.hi)) {
      r.fail("A_grid", "lo must be < hi");
    }
    grid_ok = r.errors.size() == before;
  }

  if (const json* sc = r.object(doc, "screen", "screen", false)) {
    s.screen = read_screen(r, *sc, "screen");
  }
  if (const json* sa = r.object(doc, "salop", "salop", false)) {
    SalopConstants c;
    c.A = r.number(*sa, "A", "salop.A", 0.0);
    c.C = r.number(*sa, "C", "salop.C", {});
    c.a = r.number(*sa, "a", "salop.a", {});
    c.b = r.number(*sa, "b", "salop.b", {});
    if (!(c.C > 0.0)) r.fail("salop.C", "must be > 0");
    if (!(c.a > 0.0)) r.fail("salop.a", "must be > 0");
    if (c.b < 0.0) r.fail("salop.b", "must be >= 0");
    s.salop = c;
  }
  if (const json* ad = r.object(doc, "adoption", "adoption", false)) {
    AdoptionParams a;
    a.A_low = r.number(*ad, "A_low", "adoption.A_low", {});
    a.A_high = r.number(*ad, "A_high", "adoption.A_high", {});
    a.psi = r.number(*ad, "psi", "adoption.psi", 0.0);
    if (a.A_low > a.A_high) r.fail("adoption", "A_low must be <= A_high");
    if (a.psi < 0.0) r.fail("adoption.psi", "must be >= 0");
    s.adoption = a;
  }

  // Cross-field checks need a constructible profile.
  if ((family_ok || (s.overrides && table_ok)) && r.errors.empty()) {
    try {
      CapabilityProfile profile = s.profile();
      const CapabilityDomain& dom = profile.domain();
      auto inside = [&](double A, const std::string& path) {
        if (!dom.contains(A)) r.fail(path, "outside the capability domain");
      };
      if (grid_ok) {
        if (!dom.contains(s.A_grid.lo) || !dom.contains(s.A_grid.hi)) {
          r.fail("A_grid", "outside the capability domain");
        }
      }
      if (s.screen) inside(s.screen->A, "screen.A");
      if (s.salop) inside(s.salop->A, "salop.A");
      if (s.adoption) {
        inside(s.adoption->A_low, "adoption.A_low");
        inside(s.adoption->A_high, "adoption.A_high");
      }
    } catch (const ValidationError& e) {
      for (const auto& f : e.errors()) {
        const bool domain = f.path.rfind("domain", 0) == 0;
        r.fail(domain ? f.path
                      : join(s.overrides ? "overrides" : "family", f.path),
               f.message);
      }
    }
  }

  if (!r.errors.empty()) throw ValidationError(r.errors);
  return s;
}

json scenario_to_json(const Scenario& s) {
  json doc;
  doc["name"] = s.name;
  const ParametricFamily& f = s.family;
  doc["family"] = {{"tau0", f.tau0}, {"beta", f.beta},   {"kappa0", f.kappa0},
                   {"gamma", f.gamma}, {"c0", f.c0},     {"eta", f.eta},
                   {"F0", f.F0},     {"phi", f.phi}};
  if (s.overrides) {
    doc["overrides"] = {{"A", s.overrides->A},
                        {"t", s.overrides->t},
                        {"kappa", s.overrides->kappa},
                        {"c", s.overrides->c},
                        {"F", s.overrides->F}};
  }
  if (s.domain) {
    doc["domain"]["lo"] = s.domain->lo;
    if (std::isfinite(s.domain->hi)) doc["domain"]["hi"] = s.domain->hi;
  }
  doc["A_grid"] = {
      {"lo", s.A_grid.lo}, {"hi", s.A_grid.hi}, {"steps", s.A_grid.steps}};
  if (s.screen) {
    const PrimitiveShift& sh = s.screen->shift;
    doc["screen"] = {{"A", s.screen->A},
                     {"shift",
                      {{"delta_t", sh.delta_t},
                       {"delta_kappa", sh.delta_kappa},
                       {"delta_F", sh.delta_F},
                       {"delta_c", sh.delta_c}}},
                     {"delta_bar_M", s.screen->delta_bar_M},
                     {"eps_bar", s.screen->eps_bar}};
  }
  if (s.salop) {
    doc["salop"] = {{"A", s.salop->A},
                    {"C", s.salop->C},
                    {"a", s.salop->a},
                    {"b", s.salop->b}};
  }
  if (s.adoption) {
    doc["adoption"] = {{"A_low", s.adoption->A_low},
                       {"A_high", s.adoption->A_high},
                       {"psi", s.adoption->psi}};
  }
  return doc;
}

json load_json_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open " + path, 0, 0);
  std::string text((std::istreambuf_iterator<char>(in)),
                   std::istreambuf_iterator<char>());
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    // Byte offset -> 1-based line and column.
    std::size_t pos = std::min<std::size_t>(e.byte, text.size());
    int line = 1;
    int column = 1;
    for (std::size_t i = 0; i + 1 < pos; ++i) {
      if (text[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    throw ParseError(path + ":" + std::to_string(line) + ":" +
                         std::to_string(column) + ": " + e.what(),
                     line, column);
  }
}

Scenario load_scenario(const std::string& path) {
  return scenario_from_json(load_json_file(path));
}

std::vector<SweepRow> run_sweep(const CapabilityProfile& profile,
                                const GridRange& grid) {
  if (!(grid.lo < grid.hi)) throw ArgumentError("A_grid: lo must be < hi");
  std::vector<SweepRow> rows;
  for (double A : grid.points()) {
    EquilibriumPoint e;
    try {
      e = solve_equilibrium(profile, A);
    } catch (const EvaluationError& err) {
      char buf[64];
      std::snprintf(buf, sizeof buf, "%.17g", A);
      throw EvaluationError(std::string("at A=") + buf + ": " + err.what());
    }
    SweepRow row;
    row.A = e.A;
    row.t = e.t;
    row.kappa = e.kappa;
    row.c = e.c;
    row.F = e.F;
    row.d_star = e.d_star;
    row.p_star = e.p_star;
    row.M = e.markup;
    row.V = e.profit;
    row.L = e.lerner;
    row.eps12 = e.eps12;
    row.slope_cross = e.slope_cross;
    row.profit = e.profit;
    row.cs = e.cs;
    row.boundary_flag = e.boundary;
    rows.push_back(row);
  }
  return rows;
}

std::vector<SweepRow> run_sweep(const Scenario& scenario) {
  return run_sweep(scenario.profile(), scenario.A_grid);
}

void write_sweep_csv(std::ostream& os, const std::vector<SweepRow>& rows) {
  for (std::size_t i = 0; i < kSweepColumns.size(); ++i) {
    os << (i ? "," : "") << kSweepColumns[i];
  }
  os << '\n';
  char buf[32];
  auto num = [&](double v) {
    std::snprintf(buf, sizeof buf, "%.17g", v);
    os << buf << ',';
  };
  for (const SweepRow& r : rows) {
    num(r.A);
    num(r.t);
    num(r.kappa);
    num(r.c);
    num(r.F);
    num(r.d_star);
    num(r.p_star);
    num(r.M);
    num(r.V);
    num(r.L);
    num(r.eps12);
    num(r.slope_cross);
    num(r.profit);
    num(r.cs);
    os << (r.boundary_flag ? 1 : 0) << '\n';
  }
}

std::vector<SweepRow> read_sweep_csv(std::istream& is) {
  std::string line;
  if (!std::getline(is, line)) throw ParseError("empty CSV", 1, 1);
  std::string expected;
  for (std::size_t i = 0; i < kSweepColumns.size(); ++i) {
    expected += (i ? "," : "");
    expected += kSweepColumns[i];
  }
  if (line != expected) throw ParseError("unexpected CSV header", 1, 1);

  std::vector<SweepRow> rows;
  int line_no = 1;
  while (std::getline(is, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::vector<double> v;
    std::stringstream ss(line);
    std::string cell;
    int col = 0;
    while (std::getline(ss, cell, ',')) {
      ++col;
      char* end = nullptr;
      double x = std::strtod(cell.c_str(), &end);
      if (cell.empty() || *end != '\0') {
        throw ParseError("bad CSV cell '" + cell + "'", line_no, col);
      }
      v.push_back(x);
    }
    if (v.size() != kSweepColumns.size()) {
      throw ParseError("wrong number of CSV columns", line_no, col);
    }
    SweepRow r;
    r.A = v[0];
    r.t = v[1];
    r.kappa = v[2];
    r.c = v[3];
    r.F = v[4];
    r.d_star = v[5];
    r.p_star = v[6];
    r.M = v[7];
    r.V = v[8];
    r.L = v[9];
    r.eps12 = v[10];
    r.slope_cross = v[11];
    r.profit = v[12];
    r.cs = v[13];
    r.boundary_flag = v[14] != 0.0;
    rows.push_back(r);
  }
  return rows;
}

std::vector<OracleCheck> run_oracle_suite(const Scenario& scenario) {
  constexpr double kPriceStep = 1e-3;
  constexpr double kCsTol = 1e-9;
  constexpr double kFdTol = 1e-6;
  constexpr double kFdStep = 1e-4;

  CapabilityProfile profile = scenario.profile();
  std::vector<double> grid = scenario.A_grid.points();
  // At most 11 evenly spread grid points.
  std::vector<double> sample;
  const std::size_t n = grid.size();
  const std::size_t m = std::min<std::size_t>(n, 11);
  for (std::size_t i = 0; i < m; ++i) {
    sample.push_back(grid[m == 1 ? 0 : i * (n - 1) / (m - 1)]);
  }

  std::vector<OracleCheck> checks;
  auto add = [&](std::string name, double A, double residual, double tol) {
    checks.push_back({std::move(name), A, residual, tol,
                      std::isfinite(residual) && residual <= tol});
  };

  for (std::size_t k = 0; k < sample.size(); ++k) {
    const double A = sample[k];
    EquilibriumPoint e = solve_equilibrium(profile, A);

    MarketConfig cfg{e.d_star, e.t, e.c, e.c, 1.0};
    GridSpec pg;
    pg.lo = e.c;
    pg.hi = e.c + 2.0 * e.markup + 0.1;
    pg.step = kPriceStep;
    OracleReport nash = grid_price_nash(cfg, pg);
    add("price_nash", A, nash.residual, 2.0 * kPriceStep);

    double cs = numeric_consumer_surplus(e.d_star, e.p_star, e.t);
    add("consumer_surplus", A, std::abs(cs - e.cs), kCsTol);

    if (!e.boundary) {
      const CapabilityDomain& dom = profile.domain();
      if (dom.contains(A - kFdStep) && dom.contains(A + kFdStep)) {
        try {
          OracleReport fd = finite_difference_check(profile, A, kFdStep);
          add("finite_difference", A, fd.residual, kFdTol);
        } catch (const StencilError&) {
          // Stencil touches the clamped regime; nothing to compare.
        }
      }
    }

    // The two-stage search is the slow one; run it at the ends and middle.
    if (!e.boundary && (k == 0 || k + 1 == sample.size() ||
                        k == sample.size() / 2)) {
      GridSpec dg;
      dg.lo = 1e-3;
      dg.hi = 1.0;
      dg.step = 1e-3;
      GridSpec pg2;
      pg2.lo = e.c;
      pg2.hi = e.c + 2.0 * e.t + 0.1;
      pg2.step = 1e-3;
      pg2.refinements = 6;
      OracleReport two = two_stage_grid_solve(profile, A, dg, pg2);
      add("two_stage_location", A, two.residual, 2.0 * dg.step);
    }
  }
  return checks;
}

}  // namespace centripetal

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

// Scenario files, capability sweeps and their CSV form, and the oracle
// agreement suite used by `centripetal oracle-check`.

#ifndef CENTRIPETAL_SCENARIO_HPP_
#define CENTRIPETAL_SCENARIO_HPP_

#include <array>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "centripetal/policy.hpp"
#include "centripetal/primitives.hpp"

namespace centripetal {

struct GridRange {
  double lo = 0.0;
  double hi = 1.0;
  int steps = 2;

  // `steps` evenly spaced points, both ends included exactly.
  std::vector<double> points() const;
};

struct ScreenParams {
  double A = 0.0;
  PrimitiveShift shift;
  double delta_bar_M = 0.0;
  double eps_bar = 0.0;
};

struct SalopConstants {
  double A = 0.0;
  double C = 1.0;
  double a = 1.0;
  double b = 0.0;
};

struct AdoptionParams {
  double A_low = 0.0;
  double A_high = 0.0;
  double psi = 0.0;
};

struct Scenario {
  std::string name;
  ParametricFamily family;
  std::optional<PrimitiveTable> overrides;  // replaces the family when set
  std::optional<CapabilityDomain> domain;
  GridRange A_grid;
  std::optional<ScreenParams> screen;
  std::optional<SalopConstants> salop;
  std::optional<AdoptionParams> adoption;

  CapabilityProfile profile() const;
};

// Parameters of the reference scenario used throughout the docs and tests.
ParametricFamily reference_family();
Scenario reference_scenario();

// Both throw ValidationError listing every offending field path.
Scenario scenario_from_json(const nlohmann::json& doc);
ScreenParams screen_params_from_json(const nlohmann::json& doc,
                                     const std::string& prefix = "");
nlohmann::json scenario_to_json(const Scenario& scenario);

// Throws ParseError (with line/column) or ValidationError.
Scenario load_scenario(const std::string& path);
nlohmann::json load_json_file(const std::string& path);

struct SweepRow {
  double A = 0.0;
  double t = 0.0;
  double kappa = 0.0;
  double c = 0.0;
  double F = 0.0;
  double d_star = 0.0;
  double p_star = 0.0;
  double M = 0.0;
  double V = 0.0;
  double L = 0.0;
  double eps12 = 0.0;
  double slope_cross = 0.0;
  double profit = 0.0;
  double cs = 0.0;
  bool boundary_flag = false;
};

inline constexpr std::array<const char*, 15> kSweepColumns = {
    "A",   "t",     "kappa",       "c",      "F",  "d_star", "p_star",
    "M",   "V",     "L",           "eps12",  "slope_cross", "profit",
    "cs",  "boundary_flag"};

std::vector<SweepRow> run_sweep(const CapabilityProfile& profile,
                                const GridRange& grid);
std::vector<SweepRow> run_sweep(const Scenario& scenario);

// Header row plus one line per row, 17 significant digits, LF endings.
void write_sweep_csv(std::ostream& os, const std::vector<SweepRow>& rows);
std::vector<SweepRow> read_sweep_csv(std::istream& is);

struct OracleCheck {
  std::string name;
  double A = 0.0;
  double residual = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

// Oracle-vs-closed-form agreement over (a subsample of) the scenario grid.
std::vector<OracleCheck> run_oracle_suite(const Scenario& scenario);

}  // namespace centripetal

#endif  // CENTRIPETAL_SCENARIO_HPP_

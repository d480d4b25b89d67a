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


// Grid search for an adoption game with a prisoner's dilemma: (High, High) is
// the unique Nash cell and both firms prefer (Low, Low). Prints the scenario
// with the widest margin as JSON (or writes it with --out).

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <limits>
#include <optional>
#include <string>

#include "CLI11.hpp"

#include "centripetal/adoption.hpp"
#include "centripetal/scenario.hpp"

namespace {

using centripetal::Action;

// Smallest of the strict inequalities that make the matrix a dilemma.
double pd_margin(const centripetal::AdoptionMatrix& m) {
  const auto& ll = m.cell(Action::kLow, Action::kLow);
  const auto& lh = m.cell(Action::kLow, Action::kHigh);
  const auto& hl = m.cell(Action::kHigh, Action::kLow);
  const auto& hh = m.cell(Action::kHigh, Action::kHigh);
  return std::min({hl.pi1 - ll.pi1, hh.pi1 - lh.pi1, lh.pi2 - ll.pi2,
                   hh.pi2 - hl.pi2, ll.pi1 - hh.pi1, ll.pi2 - hh.pi2});
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Search for a prisoner's dilemma adoption fixture"};
  std::string out_path;
  app.add_option("--out", out_path, "Write the scenario here");
  CLI11_PARSE(app, argc, argv);

  const double betas[] = {0.05, 0.1, 0.2, 0.4, 0.8};
  const double gammas[] = {0.05, 0.1, 0.2, 0.4, 0.8};
  const double etas[] = {0.5, 1.0, 2.0, 4.0};
  const double phis[] = {0.0, 0.01, 0.02};
  const double psis[] = {0.0, 0.05, 0.1};
  const double highs[] = {0.1, 0.2, 0.3, 0.5};

  std::optional<centripetal::Scenario> best;
  double best_margin = 0.0;
  long tried = 0;
  long found = 0;

  for (double beta : betas) {
    for (double gamma : gammas) {
      for (double eta : etas) {
        for (double phi : phis) {
          for (double psi : psis) {
            for (double A_high : highs) {
              centripetal::ParametricFamily f;
              f.tau0 = 1.0;
              f.beta = beta;
              f.kappa0 = 2.0;
              f.gamma = gamma;
              f.c0 = 1.0;
              f.eta = eta;
              f.F0 = 0.05;
              f.phi = phi;
              ++tried;
              try {
                auto profile = centripetal::CapabilityProfile::parametric(f);
                auto m = centripetal::adoption_matrix(
                    profile, 0.0, A_high,
                    centripetal::AdoptionCost::quadratic(psi));
                if (!m.is_prisoners_dilemma) continue;
                // Skip clamped d* and lopsided shares (near tipping).
                bool skip = false;
                for (const auto& row : m.cells) {
                  for (const auto& c : row) {
                    skip = skip || c.clamped || c.prices.share1 < 0.2 ||
                           c.prices.share1 > 0.8;
                  }
                }
                if (skip) continue;
                ++found;
                double margin = pd_margin(m);
                if (margin > best_margin) {
                  best_margin = margin;
                  centripetal::Scenario s;
                  s.name = "pd_adoption";
                  s.family = f;
                  s.A_grid = {0.0, A_high, 11};
                  s.adoption = centripetal::AdoptionParams{0.0, A_high, psi};
                  best = s;
                }
              } catch (const centripetal::Error&) {
                // Tipping or invalid corner of the grid.
              }
            }
          }
        }
      }
    }
  }

  std::fprintf(stderr, "%ld candidates, %ld dilemmas, best margin %.6g\n",
               tried, found, best_margin);
  if (!best) return 1;
  std::string text = centripetal::scenario_to_json(*best).dump(2) + "\n";
  if (out_path.empty()) {
    std::cout << text;
  } else {
    std::ofstream(out_path, std::ios::binary) << text;
  }
  return 0;
}

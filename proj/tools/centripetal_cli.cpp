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


// Command-line front end: sweeps, thresholds, screens, the Salop count,
// adoption matrices, the oracle agreement suite, and the HTTP service.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <string>

#include "CLI11.hpp"

#include "centripetal/errors.hpp"
#include "centripetal/kernels.hpp"
#include "centripetal/scenario.hpp"
#include "centripetal/service.hpp"

namespace {

using centripetal::ApiResponse;
using centripetal::QueryParams;

std::string format_number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw centripetal::ArgumentError("cannot open " + path);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

int emit(const ApiResponse& r) {
  if (r.status == 200) {
    std::cout << r.body.dump(2) << "\n";
    return 0;
  }
  std::cerr << r.body.dump(2) << "\n";
  return 2;
}

void print_validation(const centripetal::ValidationError& e) {
  std::cerr << "invalid scenario:\n";
  for (const auto& f : e.errors()) {
    std::cerr << "  " << f.path << ": " << f.message << "\n";
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Capability-indexed Hotelling duopoly toolkit"};
  app.set_version_flag("--version", centripetal::toolkit_version());
  app.require_subcommand(1);

  std::string scenario_path;
  std::string out_path;
  std::string shift_path;
  std::string bind = "127.0.0.1:8080";
  double tol = 1e-4;
  double salop_C = 0, salop_a = 0, salop_b = 0;
  std::optional<double> salop_A;

  auto* sweep = app.add_subcommand("sweep", "Equilibrium sweep over the A grid to CSV");
  sweep->add_option("--scenario", scenario_path)->required()->check(CLI::ExistingFile);
  sweep->add_option("--out", out_path, "CSV output file")->required();

  auto* threshold = app.add_subcommand("threshold", "Entry threshold A_E");
  threshold->add_option("--scenario", scenario_path)->required()->check(CLI::ExistingFile);
  threshold->add_option("--tol", tol, "Bracket width")->capture_default_str();

  auto* screen = app.add_subcommand("screen", "Two-condition merger screen");
  screen->add_option("--scenario", scenario_path)->required()->check(CLI::ExistingFile);
  screen->add_option("--shift", shift_path, "JSON shift and tolerances")
      ->required()
      ->check(CLI::ExistingFile);

  auto* salop = app.add_subcommand("salop", "Circular-city firm count");
  salop->add_option("--scenario", scenario_path)->required()->check(CLI::ExistingFile);
  salop->add_option("--C", salop_C)->required();
  salop->add_option("--a", salop_a)->required();
  salop->add_option("--b", salop_b)->required();
  salop->add_option("--A", salop_A, "Capability (default: scenario)");

  auto* adoption = app.add_subcommand("adoption", "2x2 adoption game");
  adoption->add_option("--scenario", scenario_path)->required()->check(CLI::ExistingFile);

  auto* oracle = app.add_subcommand("oracle-check", "Oracle agreement suite");
  oracle->add_option("--scenario", scenario_path)->required()->check(CLI::ExistingFile);

  auto* serve = app.add_subcommand("serve", "HTTP JSON API");
  serve->add_option("--bind", bind, "HOST:PORT")->capture_default_str();
  serve->add_option("--scenario", scenario_path, "Default scenario")
      ->check(CLI::ExistingFile);

  CLI11_PARSE(app, argc, argv);

  try {
    centripetal::Scenario scenario =
        scenario_path.empty() ? centripetal::reference_scenario()
                              : centripetal::load_scenario(scenario_path);
    centripetal::ApiCore core(scenario);

    if (*sweep) {
      auto rows = centripetal::run_sweep(scenario);
      std::ofstream out(out_path, std::ios::binary);
      if (!out) {
        std::cerr << "cannot write " << out_path << "\n";
        return 2;
      }
      centripetal::write_sweep_csv(out, rows);
      std::cout << rows.size() << " rows written to " << out_path << "\n";
      return 0;
    }
    if (*threshold) {
      return emit(core.threshold({{"tol", format_number(tol)}}));
    }
    if (*screen) return emit(core.screen(read_text(shift_path)));
    if (*salop) {
      QueryParams q{{"C", format_number(salop_C)},
                    {"a", format_number(salop_a)},
                    {"b", format_number(salop_b)}};
      if (salop_A) q.emplace("A", format_number(*salop_A));
      return emit(core.salop(q));
    }
    if (*adoption) return emit(core.adoption("{}"));
    if (*oracle) {
      int breaches = 0;
      for (const auto& c : centripetal::run_oracle_suite(scenario)) {
        std::printf("%s %-18s A=%-8.4g residual=%.3e tol=%.1e\n",
                    c.pass ? "ok    " : "BREACH", c.name.c_str(), c.A,
                    c.residual, c.tolerance);
        if (!c.pass) ++breaches;
      }
      std::printf("%d breach(es), kernels: %s\n", breaches,
                  centripetal::kernels::isa_name(centripetal::kernels::active_isa()));
      return breaches == 0 ? 0 : 1;
    }
    if (*serve) {
      auto [host, port] = centripetal::parse_bind_address(bind);
      centripetal::ApiServer server(scenario);
      int bound = server.bind(host, port);
      std::cerr << "listening on " << host << ":" << bound << "\n";
      server.listen();
      return 0;
    }
  } catch (const centripetal::ValidationError& e) {
    print_validation(e);
    return 2;
  } catch (const centripetal::ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 2;
  } catch (const centripetal::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}

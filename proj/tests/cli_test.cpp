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


#include <gtest/gtest.h>
#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <sstream>
#include <string>

#include "json.hpp"

#include "centripetal/scenario.hpp"
#include "centripetal/service.hpp"
#include "test_support.hpp"

namespace centripetal {
namespace {

struct RunResult {
  int exit_code = -1;
  std::string out;
};

RunResult run_cli(const std::string& args) {
  std::string cmd = std::string(CENTRIPETAL_CLI) + " " + args + " 2>/dev/null";
  RunResult r;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (pipe == nullptr) return r;
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, n);
  int status = pclose(pipe);
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

const std::string kS0 = testing::fixture_path("s0.json");

TEST(Cli, ThresholdMatchesApi) {
  RunResult r = run_cli("threshold --scenario " + kS0);
  ASSERT_EQ(r.exit_code, 0);
  ApiCore core(load_scenario(kS0));
  EXPECT_EQ(nlohmann::json::parse(r.out),
            core.handle("GET", "/api/threshold", {{"tol", "0.0001"}}, "").body);
}

TEST(Cli, ScreenMatchesApi) {
  const std::string shift = testing::fixture_path("merger_shift.json");
  RunResult r = run_cli("screen --scenario " + kS0 + " --shift " + shift);
  ASSERT_EQ(r.exit_code, 0);
  ApiCore core(load_scenario(kS0));
  nlohmann::json api =
      core.handle("POST", "/api/screen", {}, read_file(shift)).body;
  EXPECT_EQ(nlohmann::json::parse(r.out), api);
  EXPECT_EQ(api["result"]["verdict"], "block");
}

TEST(Cli, SalopMatchesApi) {
  RunResult r = run_cli("salop --scenario " + kS0 + " --C 1 --a 1 --b 0.1");
  ASSERT_EQ(r.exit_code, 0);
  ApiCore core(load_scenario(kS0));
  EXPECT_EQ(nlohmann::json::parse(r.out),
            core.handle("GET", "/api/salop", {{"C", "1"}, {"a", "1"}, {"b", "0.1"}}, "")
                .body);
}

TEST(Cli, AdoptionFixtureIsDilemma) {
  RunResult r =
      run_cli("adoption --scenario " + testing::fixture_path("pd_adoption.json"));
  ASSERT_EQ(r.exit_code, 0);
  EXPECT_EQ(nlohmann::json::parse(r.out)["result"]["is_prisoners_dilemma"], true);
}

TEST(Cli, SweepWritesCsv) {
  auto out = std::filesystem::temp_directory_path() / "centripetal_cli_sweep.csv";
  RunResult r = run_cli("sweep --scenario " + kS0 + " --out " + out.string());
  ASSERT_EQ(r.exit_code, 0);
  std::ostringstream want;
  write_sweep_csv(want, run_sweep(load_scenario(kS0)));
  EXPECT_EQ(read_file(out.string()), want.str());
  std::filesystem::remove(out);
}

TEST(Cli, OracleCheckPasses) {
  RunResult r = run_cli("oracle-check --scenario " + kS0);
  EXPECT_EQ(r.exit_code, 0);
  EXPECT_NE(r.out.find("0 breach(es)"), std::string::npos);
}

TEST(Cli, InvalidScenarioExitsNonzero) {
  RunResult r =
      run_cli("threshold --scenario " + testing::test_data_path("bad_grid.json"));
  EXPECT_EQ(r.exit_code, 2);
  RunResult p =
      run_cli("threshold --scenario " + testing::test_data_path("malformed.json"));
  EXPECT_EQ(p.exit_code, 2);
}

}  // namespace
}  // namespace centripetal

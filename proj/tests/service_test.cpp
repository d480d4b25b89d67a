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

#include <string>
#include <thread>
#include <vector>

#include "httplib.h"
#include "json.hpp"

#include "centripetal/scenario.hpp"
#include "centripetal/service.hpp"
#include "test_support.hpp"

namespace centripetal {
namespace {

using nlohmann::json;

const ApiCore& core() {
  static const ApiCore c(reference_scenario());
  return c;
}

const char* kScreenBody = R"({
  "A": 0,
  "shift": {"delta_kappa": 0.5},
  "delta_bar_M": 0.05,
  "eps_bar": 0.06
})";

TEST(ApiCore, EquilibriumAtZero) {
  ApiResponse r = core().handle("GET", "/api/equilibrium", {{"A", "0"}}, "");
  ASSERT_EQ(r.status, 200) << r.body.dump();
  EXPECT_EQ(r.body["result"]["d_star"], 0.5);
  EXPECT_EQ(r.body["result"]["p_star"], 1.5);
  EXPECT_EQ(r.body["result"]["M"], 0.5);
  EXPECT_EQ(r.body["input"]["A"], 0.0);
  EXPECT_EQ(r.body["version"], toolkit_version());
  EXPECT_TRUE(r.body["input"].contains("family"));
}

TEST(ApiCore, FamilyOverrideFromQuery) {
  ApiResponse r = core().handle("GET", "/api/equilibrium",
                                {{"A", "0"}, {"kappa0", "4"}}, "");
  ASSERT_EQ(r.status, 200);
  EXPECT_EQ(r.body["result"]["d_star"], 0.25);
  EXPECT_EQ(r.body["input"]["family"]["kappa0"], 4.0);
}

TEST(ApiCore, ScreenExampleBlocks) {
  ApiResponse r = core().handle("POST", "/api/screen", {}, kScreenBody);
  ASSERT_EQ(r.status, 200) << r.body.dump();
  EXPECT_EQ(r.body["result"]["approve"], false);
  EXPECT_EQ(r.body["result"]["condition_i"], false);
  EXPECT_EQ(r.body["result"]["condition_ii"], false);
  EXPECT_EQ(r.body["result"]["verdict"], "block");
  EXPECT_EQ(r.body["result"]["delta_M_first_order"], -0.125);
}

TEST(ApiCore, ThresholdForReference) {
  ApiResponse r = core().handle("GET", "/api/threshold", {}, "");
  ASSERT_EQ(r.status, 200);
  const json& res = r.body["result"];
  EXPECT_NEAR(res["A_E"].get<double>(), 0.2085, 1e-3);
  EXPECT_LT(res["bracket"]["lo"].get<double>(), res["bracket"]["hi"].get<double>());
  EXPECT_NEAR(res["analytic_bounds"]["lower"].get<double>(), 0.1579, 1e-4);
  EXPECT_NEAR(res["analytic_bounds"]["upper"].get<double>(), 0.75, 1e-12);
  EXPECT_EQ(res["status"], "threshold");
}

TEST(ApiCore, SweepRows) {
  ApiResponse r = core().handle(
      "GET", "/api/sweep", {{"lo", "0"}, {"hi", "1"}, {"steps", "3"}}, "");
  ASSERT_EQ(r.status, 200);
  ASSERT_EQ(r.body["result"]["rows"].size(), 3u);
  EXPECT_EQ(r.body["result"]["rows"][2]["d_star"], 0.125);
}

TEST(ApiCore, SalopAndEstimateAndAdoption) {
  ApiResponse s = core().handle(
      "GET", "/api/salop", {{"A", "0"}, {"C", "1"}, {"a", "1"}, {"b", "0"}}, "");
  ASSERT_EQ(s.status, 200);
  EXPECT_DOUBLE_EQ(s.body["result"]["N_stated"].get<double>(), std::sqrt(10.0));

  ApiResponse e = core().handle("POST", "/api/estimate", {}, R"({
    "cross_price_slope": 1.0,
    "probes": [{"delta": 0.1, "delta_K": 0.02}, {"delta": 0.2, "delta_K": 0.08}],
    "p_obs": 1.5
  })");
  ASSERT_EQ(e.status, 200) << e.body.dump();
  EXPECT_NEAR(e.body["result"]["kappa_hat"].get<double>(), 2.0, 1e-14);
  EXPECT_NEAR(e.body["result"]["c_hat"].get<double>(), 1.0, 1e-14);

  ApiResponse a = core().handle("POST", "/api/adoption", {},
                                R"({"A_low": 0, "A_high": 0.3, "psi": 0})");
  ASSERT_EQ(a.status, 200) << a.body.dump();
  EXPECT_EQ(a.body["result"]["cells"].size(), 4u);
}

TEST(ApiCore, MalformedRequestsAre400WithFields) {
  ApiResponse r = core().handle("GET", "/api/equilibrium", {{"A", "abc"}}, "");
  EXPECT_EQ(r.status, 400);
  EXPECT_EQ(r.body["error"]["fields"][0]["path"], "A");

  ApiResponse m = core().handle("GET", "/api/equilibrium", {}, "");
  EXPECT_EQ(m.status, 400);

  ApiResponse b = core().handle("POST", "/api/screen", {}, "{not json");
  EXPECT_EQ(b.status, 400);

  ApiResponse t = core().handle("GET", "/api/equilibrium",
                                {{"A", "0"}, {"tau0", "-1"}}, "");
  EXPECT_EQ(t.status, 400);
  EXPECT_EQ(t.body["error"]["fields"][0]["path"], "family.tau0");

  ApiResponse s = core().handle("POST", "/api/screen", {},
                                R"({"shift": {}, "delta_bar_M": 0.1, "eps_bar": 0})");
  EXPECT_EQ(s.status, 400);
  EXPECT_EQ(s.body["error"]["fields"][0]["path"], "eps_bar");

  ApiResponse g = core().handle("GET", "/api/sweep",
                                {{"lo", "1"}, {"hi", "0"}, {"steps", "3"}}, "");
  EXPECT_EQ(g.status, 400);
}

TEST(ApiCore, EvaluationErrorsAre422) {
  ApiResponse d = core().handle("GET", "/api/equilibrium", {{"A", "-1"}}, "");
  EXPECT_EQ(d.status, 422);
  EXPECT_EQ(d.body["error"]["type"], "domain");

  ApiResponse s = core().handle("POST", "/api/screen", {},
                                R"({"shift": {"delta_kappa": -5},
                                    "delta_bar_M": 0.1, "eps_bar": 0.01})");
  EXPECT_EQ(s.status, 422);
  EXPECT_EQ(s.body["error"]["type"], "shift_rejected");
}

TEST(ApiCore, RoutingErrors) {
  EXPECT_EQ(core().handle("GET", "/api/nope", {}, "").status, 404);
  EXPECT_EQ(core().handle("GET", "/api/screen", {}, "").status, 405);
}

TEST(ApiCore, OrderIndependent) {
  std::vector<std::pair<std::string, QueryParams>> gets = {
      {"/api/equilibrium", {{"A", "0.3"}}},
      {"/api/threshold", {{"beta", "2"}}},
      {"/api/equilibrium", {{"A", "0.3"}, {"gamma", "3"}}},
      {"/api/sweep", {{"steps", "4"}}}};
  std::vector<json> forward, backward;
  for (const auto& [p, q] : gets) forward.push_back(core().handle("GET", p, q, "").body);
  for (auto it = gets.rbegin(); it != gets.rend(); ++it) {
    backward.insert(backward.begin(), core().handle("GET", it->first, it->second, "").body);
  }
  EXPECT_EQ(forward, backward);
}

TEST(ApiCore, ConcurrentCallsMatchSerial) {
  json serial = core().handle("POST", "/api/screen", {}, kScreenBody).body;
  std::vector<json> out(8);
  std::vector<std::thread> threads;
  for (int i = 0; i < 8; ++i) {
    threads.emplace_back([&, i] {
      out[i] = core().handle("POST", "/api/screen", {}, kScreenBody).body;
    });
  }
  for (auto& t : threads) t.join();
  for (const auto& o : out) EXPECT_EQ(o, serial);
}

TEST(ParseBind, HostAndPort) {
  auto [h, p] = parse_bind_address("127.0.0.1:8080");
  EXPECT_EQ(h, "127.0.0.1");
  EXPECT_EQ(p, 8080);
  EXPECT_THROW(parse_bind_address("localhost"), ArgumentError);
  EXPECT_THROW(parse_bind_address("localhost:http"), ArgumentError);
  EXPECT_THROW(parse_bind_address(":80"), ArgumentError);
}

TEST(ApiServer, ServesOverHttp) {
  ApiServer server(reference_scenario());
  int port = server.bind("127.0.0.1", 0);
  ASSERT_GT(port, 0);
  std::thread loop([&] { server.listen(); });

  httplib::Client client("127.0.0.1", port);
  client.set_connection_timeout(5);
  httplib::Result eq;
  for (int i = 0; i < 50 && !eq; ++i) {
    eq = client.Get("/api/equilibrium?A=0");
    if (!eq) std::this_thread::sleep_for(std::chrono::milliseconds(20));
  }
  ASSERT_TRUE(eq);
  EXPECT_EQ(eq->status, 200);
  json body = json::parse(eq->body);
  EXPECT_EQ(body["result"]["d_star"], 0.5);
  EXPECT_EQ(body, core().handle("GET", "/api/equilibrium", {{"A", "0"}}, "").body);

  auto sc = client.Post("/api/screen", kScreenBody, "application/json");
  ASSERT_TRUE(sc);
  EXPECT_EQ(sc->status, 200);
  EXPECT_EQ(json::parse(sc->body)["result"]["approve"], false);

  auto bad = client.Get("/api/equilibrium?A=x");
  ASSERT_TRUE(bad);
  EXPECT_EQ(bad->status, 400);
  EXPECT_EQ(json::parse(bad->body)["error"]["fields"][0]["path"], "A");

  server.stop();
  loop.join();
}

}  // namespace
}  // namespace centripetal

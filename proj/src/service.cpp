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


#include "centripetal/service.hpp"

#include <cmath>
#include <cstdlib>
#include <limits>
#include <optional>
#include <utility>
#include <vector>

#include "httplib.h"

namespace centripetal {

using nlohmann::json;

const char* toolkit_version() { return CENTRIPETAL_VERSION; }

namespace {

// NaN and infinities become null.
json num(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

json interval_json(const Interval& i) {
  return {{"lo", num(i.lo)}, {"hi", num(i.hi)}};
}

json cell_name(CellIndex c) { return to_string(c); }

}  // namespace

json to_json(const ParametricFamily& f) {
  return {{"tau0", f.tau0}, {"beta", f.beta},   {"kappa0", f.kappa0},
          {"gamma", f.gamma}, {"c0", f.c0},     {"eta", f.eta},
          {"F0", f.F0},     {"phi", f.phi}};
}

json to_json(const EquilibriumPoint& e) {
  const double M = conduct_statistic(e.t, e.kappa);
  return {{"A", num(e.A)},
          {"t", num(e.t)},
          {"kappa", num(e.kappa)},
          {"c", num(e.c)},
          {"F", num(e.F)},
          {"d_star", num(e.d_star)},
          {"p_star", num(e.p_star)},
          {"markup", num(e.markup)},
          {"M", num(M)},
          {"V", num(M / 4.0 - e.F)},
          {"slope_own", num(e.slope_own)},
          {"slope_cross", num(e.slope_cross)},
          {"lerner", num(e.lerner)},
          {"eps12", num(e.eps12)},
          {"gross_margin", num(e.gross_margin)},
          {"profit", num(e.profit)},
          {"mismatch", num(e.mismatch)},
          {"cs", num(e.cs)},
          {"boundary", e.boundary}};
}

json to_json(const EntryReport& r) {
  json out = {{"status", to_string(r.status)},
              {"A_E", r.A_E ? num(*r.A_E) : json(nullptr)},
              {"bracket", interval_json(r.bracket)},
              {"M", num(r.M)},
              {"V", num(r.V)},
              {"crossings_found", r.crossings_found},
              {"bounds_contain_threshold", r.bounds_contain_threshold}};
  if (r.analytic_bounds) {
    out["analytic_bounds"] = {{"lower", num(r.analytic_bounds->lower)},
                              {"upper", num(r.analytic_bounds->upper)}};
  } else {
    out["analytic_bounds"] = nullptr;
  }
  return out;
}

json to_json(const ScreenVerdict& v) {
  return {{"M_pre", num(v.M_pre)},
          {"M_post", num(v.M_post)},
          {"V_pre", num(v.V_pre)},
          {"V_post", num(v.V_post)},
          {"condition_i", v.condition_i},
          {"condition_ii", v.condition_ii},
          {"approve", v.approve},
          {"verdict", v.approve ? "approve" : "block"},
          {"delta_M_exact", num(v.delta_M_exact)},
          {"delta_V_exact", num(v.delta_V_exact)},
          {"delta_M_first_order", num(v.delta_M_first_order)},
          {"delta_V_first_order", num(v.delta_V_first_order)}};
}

json to_json(const EstimationResult& r) {
  return {{"t_hat", num(r.t_hat)},
          {"kappa_hat", num(r.kappa_hat)},
          {"c_hat", r.c_hat ? num(*r.c_hat) : json(nullptr)},
          {"F_hat", num(r.F_hat)},
          {"M", num(r.M)},
          {"V", num(r.V)},
          {"consistent", r.consistent},
          {"warnings", r.warnings}};
}

json to_json(const SalopOutcome& s) {
  return {{"N_stated", num(s.N_stated)},
          {"N_stated_floor", num(s.N_stated_floor)},
          {"N_free_entry", s.N_free_entry},
          {"markup_scale", num(s.markup_scale)}};
}

json to_json(const AdoptionMatrix& m) {
  json cells = json::array();
  for (int a1 = 0; a1 < 2; ++a1) {
    for (int a2 = 0; a2 < 2; ++a2) {
      const AdoptionPayoffs& p = m.cells[a1][a2];
      cells.push_back(
          {{"cell", cell_name({static_cast<Action>(a1),
                               static_cast<Action>(a2)})},
           {"A1", a1 ? m.A_high : m.A_low},
           {"A2", a2 ? m.A_high : m.A_low},
           {"pi1", num(p.pi1)},
           {"pi2", num(p.pi2)},
           {"A_market", num(p.A_market)},
           {"t", num(p.t)},
           {"kappa", num(p.kappa)},
           {"d", num(p.d)},
           {"clamped", p.clamped},
           {"p1", num(p.prices.p1)},
           {"p2", num(p.prices.p2)},
           {"share1", num(p.prices.share1)}});
    }
  }
  json nash = json::array();
  for (CellIndex c : m.nash_cells) nash.push_back(cell_name(c));
  json efficient = json::array();
  for (CellIndex c : m.pareto_efficient) efficient.push_back(cell_name(c));
  json dominance = json::array();
  for (const ParetoRelation& r : m.pareto_dominance) {
    dominance.push_back({{"dominant", cell_name(r.dominant)},
                         {"dominated", cell_name(r.dominated)}});
  }
  return {{"A_low", m.A_low},
          {"A_high", m.A_high},
          {"cells", cells},
          {"nash_cells", nash},
          {"pareto_dominance", dominance},
          {"pareto_efficient", efficient},
          {"is_prisoners_dilemma", m.is_prisoners_dilemma}};
}

json to_json(const SweepRow& r) {
  return {{"A", num(r.A)},         {"t", num(r.t)},
          {"kappa", num(r.kappa)}, {"c", num(r.c)},
          {"F", num(r.F)},         {"d_star", num(r.d_star)},
          {"p_star", num(r.p_star)}, {"M", num(r.M)},
          {"V", num(r.V)},         {"L", num(r.L)},
          {"eps12", num(r.eps12)}, {"slope_cross", num(r.slope_cross)},
          {"profit", num(r.profit)}, {"cs", num(r.cs)},
          {"boundary_flag", r.boundary_flag}};
}

namespace {

constexpr const char* kFamilyKeys[] = {"tau0", "beta", "kappa0", "gamma",
                                       "c0",   "eta",  "F0",     "phi"};

double* family_field(ParametricFamily& f, const std::string& key) {
  if (key == "tau0") return &f.tau0;
  if (key == "beta") return &f.beta;
  if (key == "kappa0") return &f.kappa0;
  if (key == "gamma") return &f.gamma;
  if (key == "c0") return &f.c0;
  if (key == "eta") return &f.eta;
  if (key == "F0") return &f.F0;
  if (key == "phi") return &f.phi;
  return nullptr;
}

// Per-request parse state: accumulated field errors and the input echo.
struct Request {
  std::vector<FieldError> errors;
  json echo = json::object();

  void fail(const std::string& path, const std::string& message) {
    errors.push_back({path, message});
  }
};

std::optional<std::string> query_value(const QueryParams& q,
                                       const std::string& key) {
  auto it = q.find(key);
  if (it == q.end()) return std::nullopt;
  return it->second;
}

std::optional<double> query_number(Request& req, const QueryParams& q,
                                   const std::string& key) {
  auto raw = query_value(q, key);
  if (!raw) return std::nullopt;
  const char* s = raw->c_str();
  char* end = nullptr;
  double v = std::strtod(s, &end);
  if (raw->empty() || *end != '\0' || !std::isfinite(v)) {
    req.fail(key, "expected a finite number");
    req.echo[key] = *raw;
    return std::nullopt;
  }
  req.echo[key] = v;
  return v;
}

double query_required(Request& req, const QueryParams& q,
                      const std::string& key,
                      std::optional<double> fallback = std::nullopt) {
  if (query_value(q, key)) {
    auto v = query_number(req, q, key);
    return v.value_or(0.0);
  }
  if (fallback) {
    req.echo[key] = *fallback;
    return *fallback;
  }
  req.fail(key, "required parameter is missing");
  return 0.0;
}

// Effective profile for a request: the defaults unless family fields were
// given, in which case the (patched) parametric family is used.
struct ProfileChoice {
  std::optional<CapabilityProfile> profile;
};

ProfileChoice resolve_profile(Request& req, const Scenario& defaults,
                              const std::vector<std::pair<std::string, double>>&
                                  family_patch) {
  ProfileChoice out;
  ParametricFamily family = defaults.family;
  for (const auto& [key, value] : family_patch) {
    *family_field(family, key) = value;
  }
  if (family_patch.empty() && defaults.overrides) {
    req.echo["profile"] = "tabulated";
  } else {
    req.echo["family"] = to_json(family);
  }
  if (!req.errors.empty()) return out;
  try {
    if (family_patch.empty()) {
      out.profile = defaults.profile();
    } else {
      for (const auto& e : family.validate()) {
        req.fail("family." + e.path, e.message);
      }
      if (req.errors.empty()) {
        out.profile = CapabilityProfile::parametric(
            family, defaults.domain.value_or(CapabilityDomain{}));
      }
    }
  } catch (const ValidationError& e) {
    for (const auto& f : e.errors()) req.fail("family." + f.path, f.message);
  }
  return out;
}

std::vector<std::pair<std::string, double>> family_from_query(
    Request& req, const QueryParams& q) {
  std::vector<std::pair<std::string, double>> patch;
  for (const char* key : kFamilyKeys) {
    if (!query_value(q, key)) continue;
    auto raw = query_value(q, key);
    char* end = nullptr;
    double v = std::strtod(raw->c_str(), &end);
    if (raw->empty() || *end != '\0' || !std::isfinite(v)) {
      req.fail(std::string("family.") + key, "expected a finite number");
    } else {
      patch.emplace_back(key, v);
    }
  }
  return patch;
}

std::vector<std::pair<std::string, double>> family_from_body(
    Request& req, const json& body) {
  std::vector<std::pair<std::string, double>> patch;
  auto it = body.find("family");
  if (it == body.end() || it->is_null()) return patch;
  if (!it->is_object()) {
    req.fail("family", "expected an object");
    return patch;
  }
  ParametricFamily scratch;
  for (auto& [key, value] : it->items()) {
    if (!family_field(scratch, key)) {
      req.fail("family." + key, "unknown family parameter");
    } else if (!value.is_number() || !std::isfinite(value.get<double>())) {
      req.fail("family." + key, "expected a finite number");
    } else {
      patch.emplace_back(key, value.get<double>());
    }
  }
  return patch;
}

std::optional<json> parse_body(Request& req, const std::string& body) {
  if (body.empty()) return json::object();
  try {
    json doc = json::parse(body);
    if (!doc.is_object()) {
      req.fail("$", "request body must be a JSON object");
      return std::nullopt;
    }
    return doc;
  } catch (const json::parse_error& e) {
    req.fail("$", std::string("malformed JSON: ") + e.what());
    return std::nullopt;
  }
}

double body_number(Request& req, const json& body, const std::string& key,
                   std::optional<double> fallback = std::nullopt) {
  auto it = body.find(key);
  if (it == body.end() || it->is_null()) {
    if (!fallback) req.fail(key, "required number is missing");
    return fallback.value_or(0.0);
  }
  if (!it->is_number() || !std::isfinite(it->get<double>())) {
    req.fail(key, "expected a finite number");
    return 0.0;
  }
  return it->get<double>();
}

json envelope(const json& input, const json& result) {
  return {{"input", input}, {"result", result},
          {"version", toolkit_version()}};
}

ApiResponse field_errors(const Request& req) {
  json fields = json::array();
  for (const auto& e : req.errors) {
    fields.push_back({{"path", e.path}, {"message", e.message}});
  }
  return {400,
          {{"input", req.echo},
           {"error",
            {{"type", "validation"},
             {"message", "invalid request"},
             {"fields", fields}}},
           {"version", toolkit_version()}}};
}

// Runs `compute` and maps toolkit errors onto 400/422 responses.
template <typename F>
ApiResponse run(Request& req, F&& compute) {
  if (!req.errors.empty()) return field_errors(req);
  auto failure = [&](int status, const char* type, const std::string& what) {
    return ApiResponse{status,
                       {{"input", req.echo},
                        {"error", {{"type", type}, {"message", what}}},
                        {"version", toolkit_version()}}};
  };
  try {
    return {200, envelope(req.echo, compute())};
  } catch (const ValidationError& e) {
    for (const auto& f : e.errors()) req.fail(f.path, f.message);
    return field_errors(req);
  } catch (const ArgumentError& e) {
    return failure(400, "argument", e.what());
  } catch (const DomainError& e) {
    return failure(422, "domain", e.what());
  } catch (const TippingError& e) {
    return failure(422, "tipping", e.what());
  } catch (const MonotonicityError& e) {
    return failure(422, "monotonicity", e.what());
  } catch (const ShiftRejected& e) {
    return failure(422, "shift_rejected", e.what());
  } catch (const EstimationError& e) {
    return failure(422, "estimation", e.what());
  } catch (const UnsupportedError& e) {
    return failure(422, "unsupported", e.what());
  } catch (const Error& e) {
    return failure(422, "evaluation", e.what());
  }
}

}  // namespace

ApiCore::ApiCore(Scenario defaults) : defaults_(std::move(defaults)) {}

ApiResponse ApiCore::equilibrium(const QueryParams& q) const {
  Request req;
  double A = query_required(req, q, "A");
  auto choice = resolve_profile(req, defaults_, family_from_query(req, q));
  return run(req, [&] { return to_json(solve_equilibrium(*choice.profile, A)); });
}

ApiResponse ApiCore::sweep(const QueryParams& q) const {
  Request req;
  GridRange grid;
  grid.lo = query_required(req, q, "lo", defaults_.A_grid.lo);
  grid.hi = query_required(req, q, "hi", defaults_.A_grid.hi);
  double steps = query_required(req, q, "steps", defaults_.A_grid.steps);
  if (steps != std::floor(steps) || steps < 2 || steps > 100000) {
    req.fail("steps", "must be an integer in [2, 100000]");
  } else {
    grid.steps = static_cast<int>(steps);
  }
  if (req.errors.empty() && !(grid.lo < grid.hi)) {
    req.fail("A_grid", "lo must be < hi");
  }
  auto choice = resolve_profile(req, defaults_, family_from_query(req, q));
  return run(req, [&] {
    json rows = json::array();
    for (const SweepRow& r : run_sweep(*choice.profile, grid)) {
      rows.push_back(to_json(r));
    }
    return json{{"rows", rows}};
  });
}

ApiResponse ApiCore::threshold(const QueryParams& q) const {
  Request req;
  Interval search;
  search.lo = query_required(req, q, "lo", defaults_.A_grid.lo);
  search.hi = query_required(req, q, "hi", defaults_.A_grid.hi);
  double tol = query_required(req, q, "tol", 1e-4);
  if (!(tol > 0.0)) req.fail("tol", "must be > 0");
  auto choice = resolve_profile(req, defaults_, family_from_query(req, q));
  return run(req, [&] {
    return to_json(entry_threshold(*choice.profile, search, tol));
  });
}

ApiResponse ApiCore::salop(const QueryParams& q) const {
  Request req;
  std::optional<SalopConstants> d = defaults_.salop;
  double A = query_required(req, q, "A", d ? d->A : defaults_.A_grid.lo);
  double C = query_required(req, q, "C", d ? std::optional(d->C) : std::nullopt);
  double a = query_required(req, q, "a", d ? std::optional(d->a) : std::nullopt);
  double b = query_required(req, q, "b", d ? std::optional(d->b) : std::nullopt);
  auto choice = resolve_profile(req, defaults_, family_from_query(req, q));
  return run(req, [&] {
    return to_json(salop_structure(*choice.profile, A, C, a, b));
  });
}

ApiResponse ApiCore::screen(const std::string& body) const {
  Request req;
  auto doc = parse_body(req, body);
  if (!doc) return field_errors(req);
  // Scenario screen parameters fill whatever the body leaves out.
  json merged = json::object();
  if (defaults_.screen) merged = scenario_to_json(defaults_)["screen"];
  for (auto& [key, value] : doc->items()) {
    if (key != "family") merged[key] = value;
  }
  req.echo = merged;
  ScreenParams params;
  try {
    params = screen_params_from_json(merged);
  } catch (const ValidationError& e) {
    for (const auto& f : e.errors()) req.fail(f.path, f.message);
  }
  auto choice = resolve_profile(req, defaults_, family_from_body(req, *doc));
  return run(req, [&] {
    return to_json(merger_screen(*choice.profile, params.A, params.shift,
                                 params.delta_bar_M, params.eps_bar));
  });
}

ApiResponse ApiCore::estimate(const std::string& body) const {
  Request req;
  auto doc = parse_body(req, body);
  if (!doc) return field_errors(req);
  req.echo = *doc;
  EstimationInputs in;
  in.cross_price_slope = body_number(req, *doc, "cross_price_slope");
  in.fixed_outlays = body_number(req, *doc, "fixed_outlays", 0.0);
  in.amortization_base = body_number(req, *doc, "amortization_base", 1.0);
  if (doc->contains("p_obs") && !(*doc)["p_obs"].is_null()) {
    in.p_obs = body_number(req, *doc, "p_obs");
  }
  std::optional<double> kappa_known;
  if (doc->contains("kappa_known") && !(*doc)["kappa_known"].is_null()) {
    kappa_known = body_number(req, *doc, "kappa_known");
  }
  auto probes = doc->find("probes");
  if (probes != doc->end() && !probes->is_null()) {
    if (!probes->is_array()) {
      req.fail("probes", "expected an array");
    } else {
      for (std::size_t i = 0; i < probes->size(); ++i) {
        const json& p = (*probes)[i];
        std::string path = "probes[" + std::to_string(i) + "]";
        if (!p.is_object()) {
          req.fail(path, "expected an object");
          continue;
        }
        Request sub;
        ProbeObservation o;
        o.delta = body_number(sub, p, "delta");
        o.delta_K = body_number(sub, p, "delta_K");
        for (const auto& e : sub.errors) req.fail(path + "." + e.path, e.message);
        in.probes.push_back(o);
      }
    }
  }
  return run(req, [&] { return to_json(estimate_primitives(in, kappa_known)); });
}

ApiResponse ApiCore::adoption(const std::string& body) const {
  Request req;
  auto doc = parse_body(req, body);
  if (!doc) return field_errors(req);
  req.echo = *doc;
  std::optional<AdoptionParams> d = defaults_.adoption;
  double A_low = body_number(req, *doc, "A_low",
                             d ? std::optional(d->A_low) : std::nullopt);
  double A_high = body_number(req, *doc, "A_high",
                              d ? std::optional(d->A_high) : std::nullopt);
  double psi = body_number(req, *doc, "psi", d ? d->psi : 0.0);
  if (psi < 0.0) req.fail("psi", "must be >= 0");
  req.echo["A_low"] = A_low;
  req.echo["A_high"] = A_high;
  req.echo["psi"] = psi;
  auto choice = resolve_profile(req, defaults_, family_from_body(req, *doc));
  return run(req, [&] {
    return to_json(adoption_matrix(*choice.profile, A_low, A_high,
                                   AdoptionCost::quadratic(psi)));
  });
}

ApiResponse ApiCore::handle(const std::string& method, const std::string& path,
                            const QueryParams& query,
                            const std::string& body) const {
  struct Route {
    const char* path;
    const char* method;
  };
  static constexpr Route kRoutes[] = {
      {"/api/equilibrium", "GET"}, {"/api/sweep", "GET"},
      {"/api/threshold", "GET"},   {"/api/salop", "GET"},
      {"/api/screen", "POST"},     {"/api/estimate", "POST"},
      {"/api/adoption", "POST"}};
  for (const Route& r : kRoutes) {
    if (path != r.path) continue;
    if (method != r.method) {
      return {405,
              {{"error",
                {{"type", "method"},
                 {"message", std::string("use ") + r.method}}},
               {"version", toolkit_version()}}};
    }
    if (path == "/api/equilibrium") return equilibrium(query);
    if (path == "/api/sweep") return sweep(query);
    if (path == "/api/threshold") return threshold(query);
    if (path == "/api/salop") return salop(query);
    if (path == "/api/screen") return screen(body);
    if (path == "/api/estimate") return estimate(body);
    return adoption(body);
  }
  return {404,
          {{"error", {{"type", "not_found"}, {"message", "unknown endpoint"}}},
           {"version", toolkit_version()}}};
}

std::pair<std::string, int> parse_bind_address(const std::string& bind) {
  auto colon = bind.rfind(':');
  if (colon == std::string::npos || colon == 0 || colon + 1 == bind.size()) {
    throw ArgumentError("bind address must be HOST:PORT, got '" + bind + "'");
  }
  std::string host = bind.substr(0, colon);
  std::string port_text = bind.substr(colon + 1);
  char* end = nullptr;
  long port = std::strtol(port_text.c_str(), &end, 10);
  if (*end != '\0' || port < 0 || port > 65535) {
    throw ArgumentError("invalid port '" + port_text + "'");
  }
  return {host, static_cast<int>(port)};
}

struct ApiServer::Impl {
  explicit Impl(Scenario defaults) : core(std::move(defaults)) {}
  ApiCore core;
  httplib::Server server;
};

ApiServer::ApiServer(Scenario defaults)
    : impl_(std::make_unique<Impl>(std::move(defaults))) {
  auto handler = [this](const httplib::Request& req, httplib::Response& res) {
    QueryParams query(req.params.begin(), req.params.end());
    ApiResponse out = impl_->core.handle(req.method, req.path, query, req.body);
    res.status = out.status;
    res.set_content(out.body.dump(), "application/json");
  };
  impl_->server.Get(R"(/api/.*)", handler);
  impl_->server.Post(R"(/api/.*)", handler);
}

ApiServer::~ApiServer() { stop(); }

int ApiServer::bind(const std::string& host, int port) {
  if (port == 0) {
    int bound = impl_->server.bind_to_any_port(host);
    if (bound < 0) throw ArgumentError("cannot bind " + host);
    return bound;
  }
  if (!impl_->server.bind_to_port(host, port)) {
    throw ArgumentError("cannot bind " + host + ":" + std::to_string(port));
  }
  return port;
}

void ApiServer::listen() { impl_->server.listen_after_bind(); }

void ApiServer::stop() {
  if (impl_ && impl_->server.is_running()) impl_->server.stop();
}

void serve_api(const std::string& bind_address, const Scenario& defaults) {
  auto [host, port] = parse_bind_address(bind_address);
  ApiServer server(defaults);
  server.bind(host, port);
  server.listen();
}

}  // namespace centripetal

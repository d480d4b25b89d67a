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

// JSON request handling shared by the command-line tool and the HTTP server.
// Every response body is {"input": ..., "result": ..., "version": ...}.

#ifndef CENTRIPETAL_SERVICE_HPP_
#define CENTRIPETAL_SERVICE_HPP_

#include <map>
#include <memory>
#include <string>

#include "json.hpp"

#include "centripetal/adoption.hpp"
#include "centripetal/duopoly.hpp"
#include "centripetal/entry.hpp"
#include "centripetal/policy.hpp"
#include "centripetal/scenario.hpp"

namespace centripetal {

const char* toolkit_version();

nlohmann::json to_json(const EquilibriumPoint& e);
nlohmann::json to_json(const EntryReport& r);
nlohmann::json to_json(const ScreenVerdict& v);
nlohmann::json to_json(const EstimationResult& r);
nlohmann::json to_json(const SalopOutcome& s);
nlohmann::json to_json(const AdoptionMatrix& m);
nlohmann::json to_json(const SweepRow& r);
nlohmann::json to_json(const ParametricFamily& f);

struct ApiResponse {
  int status = 200;
  nlohmann::json body;
};

using QueryParams = std::multimap<std::string, std::string>;

// Stateless request core. Holds only the immutable default scenario; any
// request may override family parameters (query string or "family" body
// object). Safe to call from many threads at once.
class ApiCore {
 public:
  explicit ApiCore(Scenario defaults);

  ApiResponse handle(const std::string& method, const std::string& path,
                     const QueryParams& query, const std::string& body) const;

  ApiResponse equilibrium(const QueryParams& query) const;
  ApiResponse sweep(const QueryParams& query) const;
  ApiResponse threshold(const QueryParams& query) const;
  ApiResponse salop(const QueryParams& query) const;
  ApiResponse screen(const std::string& body) const;
  ApiResponse estimate(const std::string& body) const;
  ApiResponse adoption(const std::string& body) const;

  const Scenario& defaults() const { return defaults_; }

 private:
  Scenario defaults_;
};

// Splits "HOST:PORT"; throws ArgumentError.
std::pair<std::string, int> parse_bind_address(const std::string& bind);

// HTTP front end over ApiCore.
class ApiServer {
 public:
  explicit ApiServer(Scenario defaults);
  ~ApiServer();
  ApiServer(const ApiServer&) = delete;
  ApiServer& operator=(const ApiServer&) = delete;

  // Binds (port 0 picks a free port) and returns the bound port. Throws
  // ArgumentError if the address cannot be bound.
  int bind(const std::string& host, int port);
  // Blocks until stop() is called.
  void listen();
  void stop();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

// bind + listen.
void serve_api(const std::string& bind_address, const Scenario& defaults);

}  // namespace centripetal

#endif  // CENTRIPETAL_SERVICE_HPP_

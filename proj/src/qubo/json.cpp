// Copyright 2026 The asyncopt Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// =============================================================================

#include "asyncopt/qubo/json.hpp"

#include <string>

#include "asyncopt/error.hpp"

namespace asyncopt::qubo {

using nlohmann::json;

namespace {

[[noreturn]] void bad_field(const std::string& field, const std::string& why) {
  throw Error(ErrorCode::ConfigError, field + ": " + why);
}

const json& require(const json& j, const std::string& field, const std::string& path) {
  if (!j.is_object()) bad_field(path.empty() ? "(root)" : path, "expected an object");
  auto it = j.find(field);
  if (it == j.end()) bad_field(path + field, "missing");
  return *it;
}

double number(const json& j, const std::string& field, const std::string& path = "") {
  const json& v = require(j, field, path);
  if (!v.is_number()) bad_field(path + field, "expected a number");
  return v.get<double>();
}

std::uint64_t unsigned_int(const json& j, const std::string& field, const std::string& path = "") {
  const json& v = require(j, field, path);
  if (!v.is_number_unsigned()) bad_field(path + field, "expected a nonnegative integer");
  return v.get<std::uint64_t>();
}

QuboWeights weights_at(const json& j, const std::string& path) {
  return QuboWeights{number(j, "w_reward", path), number(j, "w_penalty", path)};
}

}  // namespace

void to_json(json& j, const QuboWeights& w) { j = json{{"w_reward", w.w_reward}, {"w_penalty", w.w_penalty}}; }

void from_json(const json& j, QuboWeights& w) { w = weights_at(j, ""); }

void to_json(json& j, const SatelliteProblem& p) {
  j = json{{"n_satellites", p.n_satellites}, {"n_requests", p.n_requests}, {"view_height", p.view_height},
           {"turn_speed", p.turn_speed},     {"seed", p.seed},             {"qubo_weights", p.qubo_weights}};
}

void from_json(const json& j, SatelliteProblem& p) {
  const auto n_sat = unsigned_int(j, "n_satellites");
  const auto n_req = unsigned_int(j, "n_requests");
  if (n_sat > UINT32_MAX) bad_field("n_satellites", "too large");
  if (n_req > UINT32_MAX) bad_field("n_requests", "too large");
  p.n_satellites = static_cast<std::uint32_t>(n_sat);
  p.n_requests = static_cast<std::uint32_t>(n_req);
  p.view_height = number(j, "view_height");
  p.turn_speed = number(j, "turn_speed");
  p.seed = unsigned_int(j, "seed");
  p.qubo_weights = weights_at(require(j, "qubo_weights", ""), "qubo_weights.");
  p.validate();
}

void to_json(json& j, const Assignment& a) { j = json{{"satellite", a.satellite}, {"request", a.request}}; }

void to_json(json& j, const Schedule& s) { j = json{{"assignments", s.assignments}, {"score", s.score}}; }

void to_json(json& j, const Geometry& g) {
  json reqs = json::array();
  for (const auto& r : g.requests) reqs.push_back({{"x", r.x}, {"y", r.y}});
  j = json{{"requests", reqs}, {"satellite_altitude", g.satellite_altitude}};
}

SatelliteProblem parse_problem(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    // nlohmann reports a byte offset; translate it to line/column.
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw Error(ErrorCode::ConfigError,
                "problem JSON line " + std::to_string(line) + ", column " + std::to_string(col) + ": syntax error");
  }
  return doc.get<SatelliteProblem>();
}

}  // namespace asyncopt::qubo

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

#pragma once

#include <nlohmann/json.hpp>

#include "asyncopt/qubo/problem.hpp"
#include "asyncopt/qubo/qubo.hpp"
#include "asyncopt/qubo/schedule.hpp"

namespace asyncopt::qubo {

// from_json validates and throws ConfigError naming the offending field.
void to_json(nlohmann::json& j, const QuboWeights& w);
void from_json(const nlohmann::json& j, QuboWeights& w);
void to_json(nlohmann::json& j, const SatelliteProblem& p);
void from_json(const nlohmann::json& j, SatelliteProblem& p);
void to_json(nlohmann::json& j, const Assignment& a);
void to_json(nlohmann::json& j, const Schedule& s);
void to_json(nlohmann::json& j, const Geometry& g);

/// Parses a SatelliteProblem document. Syntax errors report line and column.
SatelliteProblem parse_problem(const std::string& text);

}  // namespace asyncopt::qubo

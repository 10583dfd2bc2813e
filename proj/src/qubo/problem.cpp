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

#include "asyncopt/qubo/problem.hpp"

#include <cmath>
#include <random>

#include "asyncopt/error.hpp"
#include "asyncopt/seed.hpp"

namespace asyncopt::qubo {

void SatelliteProblem::validate() const {
  auto fail = [](const char* field, const char* why) {
    throw Error(ErrorCode::ConfigError, std::string(field) + ": " + why);
  };
  if (n_satellites == 0) fail("n_satellites", "must be positive");
  if (n_requests == 0) fail("n_requests", "must be positive");
  if (!(view_height > 0.0 && view_height <= 1.0)) fail("view_height", "must be in (0, 1]");
  if (!(turn_speed > 0.0) || !std::isfinite(turn_speed)) fail("turn_speed", "must be positive and finite");
  if (!(qubo_weights.w_reward > 0.0)) fail("qubo_weights.w_reward", "must be positive");
  if (!(qubo_weights.w_penalty > 0.0)) fail("qubo_weights.w_penalty", "must be positive");
}

bool Geometry::visible(std::size_t satellite, std::size_t request, double view_height) const {
  return std::abs(requests[request].y - satellite_altitude[satellite]) <= view_height / 2.0;
}

Geometry generate_problem(const SatelliteProblem& config) {
  config.validate();
  std::mt19937_64 rng(config.seed);
  Geometry g;
  g.requests.reserve(config.n_requests);
  for (std::uint32_t r = 0; r < config.n_requests; ++r) {
    const double x = uniform01(rng);
    const double y = uniform01(rng);
    g.requests.push_back(Point{x, y});
  }
  g.satellite_altitude.reserve(config.n_satellites);
  for (std::uint32_t s = 0; s < config.n_satellites; ++s)
    g.satellite_altitude.push_back((s + 0.5) / static_cast<double>(config.n_satellites));
  return g;
}

std::vector<std::size_t> ConflictGraph::degrees() const {
  std::vector<std::size_t> deg(nodes.size(), 0);
  for (const auto& [a, b] : edges) {
    ++deg[a];
    ++deg[b];
  }
  return deg;
}

ConflictGraph build_conflict_graph(const Geometry& geometry, const SatelliteProblem& config) {
  ConflictGraph graph;
  for (std::uint32_t s = 0; s < geometry.satellite_altitude.size(); ++s) {
    for (std::uint32_t r = 0; r < geometry.requests.size(); ++r) {
      if (geometry.visible(s, r, config.view_height)) graph.nodes.push_back(Assignment{s, r});
    }
  }
  // Nodes are ordered, so scanning i < j yields a sorted, duplicate-free list.
  for (std::size_t i = 0; i < graph.nodes.size(); ++i) {
    for (std::size_t j = i + 1; j < graph.nodes.size(); ++j) {
      const Assignment& a = graph.nodes[i];
      const Assignment& b = graph.nodes[j];
      bool conflict = false;
      if (a.request == b.request) {
        conflict = a.satellite != b.satellite;
      } else if (a.satellite == b.satellite) {
        const Point& p = geometry.requests[a.request];
        const Point& q = geometry.requests[b.request];
        conflict = std::abs(p.y - q.y) > config.turn_speed * std::abs(p.x - q.x);
      }
      if (conflict) graph.edges.emplace_back(i, j);
    }
  }
  return graph;
}

}  // namespace asyncopt::qubo

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

#include <cstddef>
#include <cstdint>
#include <utility>
#include <vector>

namespace asyncopt::qubo {

struct QuboWeights {
  double w_reward = 1.0;   // > 0, paid for every selected node
  double w_penalty = 2.0;  // > 0, charged for every selected conflict edge

  bool operator==(const QuboWeights&) const = default;
};

/// A scheduling instance: satellites sweep the unit square left to right at
/// fixed altitudes and can observe requests inside a horizontal view band.
struct SatelliteProblem {
  std::uint32_t n_satellites = 3;
  std::uint32_t n_requests = 12;
  double view_height = 0.4;  // (0, 1]
  double turn_speed = 1.0;   // max |dy/dx| between consecutive observations
  std::uint64_t seed = 7;
  QuboWeights qubo_weights;

  void validate() const;  // throws ConfigError naming the field
  bool operator==(const SatelliteProblem&) const = default;
};

struct Point {
  double x = 0.0;
  double y = 0.0;

  bool operator==(const Point&) const = default;
};

struct Geometry {
  std::vector<Point> requests;
  std::vector<double> satellite_altitude;  // y_i = (i + 0.5) / n_satellites

  bool visible(std::size_t satellite, std::size_t request, double view_height) const;
  bool operator==(const Geometry&) const = default;
};

/// Requests uniform in the unit square, drawn from `seed` only.
Geometry generate_problem(const SatelliteProblem& config);

struct Assignment {
  std::uint32_t satellite = 0;
  std::uint32_t request = 0;

  bool operator==(const Assignment&) const = default;
  auto operator<=>(const Assignment&) const = default;
};

/// Nodes are visible (satellite, request) pairs; edges join pairs that cannot
/// both be scheduled.
struct ConflictGraph {
  std::vector<Assignment> nodes;
  std::vector<std::pair<std::size_t, std::size_t>> edges;  // i < j, sorted, unique

  std::size_t size() const { return nodes.size(); }
  std::vector<std::size_t> degrees() const;
};

/// Edge iff (a) same request on different satellites, or (b) same satellite
/// and |dy| > turn_speed * |dx| between the two requests.
ConflictGraph build_conflict_graph(const Geometry& geometry, const SatelliteProblem& config);

}  // namespace asyncopt::qubo

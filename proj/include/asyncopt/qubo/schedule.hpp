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
#include <span>
#include <vector>

#include "asyncopt/qubo/problem.hpp"
#include "asyncopt/qubo/qubo.hpp"

namespace asyncopt::qubo {

struct Schedule {
  std::vector<Assignment> assignments;
  std::uint32_t score = 0;  // distinct requests served

  bool operator==(const Schedule&) const = default;
};

/// Number of conflict edges with both endpoints selected.
std::size_t count_violations(std::span<const std::uint8_t> state, const ConflictGraph& graph);

/// Repairs the selection by dropping, per violated edge, the endpoint with the
/// higher degree inside the selected subgraph (ties: higher index).
Schedule decode(std::span<const std::uint8_t> state, const ConflictGraph& graph);

struct PipelineResult {
  Schedule schedule;
  std::size_t n_nodes = 0;
  std::size_t violations_before_repair = 0;
  std::uint64_t steps_taken = 0;
};

/// generate -> encode -> solve -> decode. An empty conflict graph scores 0.
PipelineResult run_pipeline(const SatelliteProblem& problem, const AnnealParams& params, std::uint64_t solver_seed);

/// Candidate hyperparameters tuned by the optimizer: (w_penalty, t_start).
inline constexpr std::size_t kCandidateDims = 2;
inline constexpr double kCandidateLo[kCandidateDims] = {0.5, 0.5};
inline constexpr double kCandidateHi[kCandidateDims] = {8.0, 5.0};

/// Writes x into a copy of the instance and solver params. w_reward is pinned
/// to 1 and t_end is lowered to t_start when needed. DimensionMismatch if
/// x.size() != kCandidateDims.
void apply_candidate(std::span<const double> x, SatelliteProblem& problem, AnnealParams& params);

}  // namespace asyncopt::qubo

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

#include "asyncopt/qubo/schedule.hpp"

#include <algorithm>
#include <set>
#include <string>

#include "asyncopt/error.hpp"

namespace asyncopt::qubo {

namespace {

void check_size(std::span<const std::uint8_t> state, const ConflictGraph& graph) {
  if (state.size() != graph.size())
    throw Error(ErrorCode::DimensionMismatch,
                "state has " + std::to_string(state.size()) + " bits, graph has " + std::to_string(graph.size()) + " nodes");
}

}  // namespace

std::size_t count_violations(std::span<const std::uint8_t> state, const ConflictGraph& graph) {
  check_size(state, graph);
  std::size_t n = 0;
  for (const auto& [a, b] : graph.edges) n += (state[a] && state[b]) ? 1 : 0;
  return n;
}

Schedule decode(std::span<const std::uint8_t> state, const ConflictGraph& graph) {
  check_size(state, graph);
  std::vector<std::uint8_t> keep(state.begin(), state.end());
  for (;;) {
    std::vector<std::size_t> degree(graph.size(), 0);
    const std::pair<std::size_t, std::size_t>* violated = nullptr;
    for (const auto& e : graph.edges) {
      if (keep[e.first] && keep[e.second]) {
        ++degree[e.first];
        ++degree[e.second];
        if (!violated) violated = &e;
      }
    }
    if (!violated) break;
    const auto [a, b] = *violated;  // a < b
    keep[degree[a] > degree[b] ? a : b] = 0;
  }

  Schedule schedule;
  std::set<std::uint32_t> served;
  for (std::size_t i = 0; i < graph.size(); ++i) {
    if (!keep[i]) continue;
    schedule.assignments.push_back(graph.nodes[i]);
    served.insert(graph.nodes[i].request);
  }
  schedule.score = static_cast<std::uint32_t>(served.size());
  return schedule;
}

PipelineResult run_pipeline(const SatelliteProblem& problem, const AnnealParams& params, std::uint64_t solver_seed) {
  params.validate();
  const Geometry geometry = generate_problem(problem);
  const ConflictGraph graph = build_conflict_graph(geometry, problem);
  PipelineResult out;
  out.n_nodes = graph.size();
  if (graph.size() == 0) return out;
  const QuboMatrix q = to_qubo(graph, problem.qubo_weights);
  const AnnealResult annealed = solve(q, params, solver_seed);
  out.violations_before_repair = count_violations(annealed.state, graph);
  out.schedule = decode(annealed.state, graph);
  out.steps_taken = annealed.steps_taken;
  return out;
}

void apply_candidate(std::span<const double> x, SatelliteProblem& problem, AnnealParams& params) {
  if (x.size() != kCandidateDims)
    throw Error(ErrorCode::DimensionMismatch,
                "candidate has " + std::to_string(x.size()) + " values, expected " + std::to_string(kCandidateDims));
  problem.qubo_weights.w_reward = 1.0;
  problem.qubo_weights.w_penalty = x[0];
  params.t_start = x[1];
  params.t_end = std::min(params.t_end, params.t_start);
}

}  // namespace asyncopt::qubo

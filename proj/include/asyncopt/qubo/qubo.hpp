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

namespace asyncopt::qubo {

using BinaryVector = std::vector<std::uint8_t>;

/// Upper-triangular QUBO. Diagonal holds linear terms, q(i, j) with i < j
/// holds couplings; entries below the diagonal are always zero.
class QuboMatrix {
 public:
  explicit QuboMatrix(std::size_t n);

  std::size_t size() const { return n_; }
  double at(std::size_t i, std::size_t j) const { return q_[i * n_ + j]; }
  void set(std::size_t i, std::size_t j, double value);  // OutOfBounds if i > j

 private:
  std::size_t n_;
  std::vector<double> q_;
};

/// MIS encoding: diagonal -w_reward, +w_penalty per edge. Throws EmptyGraph
/// when the graph has no nodes.
QuboMatrix to_qubo(const ConflictGraph& graph, const QuboWeights& weights);

double energy(const QuboMatrix& q, std::span<const std::uint8_t> x);

struct AnnealParams {
  std::uint32_t sweeps = 200;
  double t_start = 2.0;
  double t_end = 0.05;

  void validate() const;
  bool operator==(const AnnealParams&) const = default;
};

struct AnnealResult {
  BinaryVector state;
  double energy = 0.0;
  std::uint64_t steps_taken = 0;  // sweeps * n + seeded overhead
};

/// Simulated annealing, single-flip Metropolis, geometric cooling. Returns the
/// best state visited.
AnnealResult solve(const QuboMatrix& q, const AnnealParams& params, std::uint64_t seed);

}  // namespace asyncopt::qubo

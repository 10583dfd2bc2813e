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

#include "asyncopt/qubo/qubo.hpp"

#include <cmath>
#include <random>
#include <string>

#include "asyncopt/error.hpp"
#include "asyncopt/seed.hpp"

namespace asyncopt::qubo {

QuboMatrix::QuboMatrix(std::size_t n) : n_(n), q_(n * n, 0.0) {}

void QuboMatrix::set(std::size_t i, std::size_t j, double value) {
  if (i > j || j >= n_)
    throw Error(ErrorCode::OutOfBounds, "q(" + std::to_string(i) + ", " + std::to_string(j) + ") outside the upper triangle");
  q_[i * n_ + j] = value;
}

QuboMatrix to_qubo(const ConflictGraph& graph, const QuboWeights& weights) {
  if (graph.size() == 0) throw Error(ErrorCode::EmptyGraph, "conflict graph has no nodes");
  QuboMatrix q(graph.size());
  for (std::size_t i = 0; i < graph.size(); ++i) q.set(i, i, -weights.w_reward);
  for (const auto& [a, b] : graph.edges) q.set(a, b, weights.w_penalty);
  return q;
}

double energy(const QuboMatrix& q, std::span<const std::uint8_t> x) {
  if (x.size() != q.size())
    throw Error(ErrorCode::DimensionMismatch,
                "state has " + std::to_string(x.size()) + " bits, QUBO has " + std::to_string(q.size()));
  double e = 0.0;
  for (std::size_t i = 0; i < q.size(); ++i) {
    if (!x[i]) continue;
    for (std::size_t j = i; j < q.size(); ++j) {
      if (x[j]) e += q.at(i, j);
    }
  }
  return e;
}

void AnnealParams::validate() const {
  if (sweeps < 1) throw Error(ErrorCode::ConfigError, "sweeps: must be at least 1");
  if (!(t_end > 0.0)) throw Error(ErrorCode::ConfigError, "t_end: must be positive");
  if (!(t_start >= t_end)) throw Error(ErrorCode::ConfigError, "t_start: must be >= t_end");
}

AnnealResult solve(const QuboMatrix& q, const AnnealParams& params, std::uint64_t seed) {
  params.validate();
  const std::size_t n = q.size();
  std::mt19937_64 rng(seed);

  // Symmetric couplings and local fields h_i = q_ii + sum_j c_ij x_j, so a
  // flip of bit i changes the energy by (1 - 2 x_i) h_i.
  std::vector<double> c(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) c[i * n + j] = c[j * n + i] = q.at(i, j);

  // Start from the empty selection; the best state only moves on strict
  // improvement, so ties with energy 0 resolve to all zeros.
  BinaryVector x(n, 0);
  std::vector<double> h(n);
  for (std::size_t i = 0; i < n; ++i) h[i] = q.at(i, i);

  AnnealResult best{x, energy(q, x), 0};
  double e = best.energy;
  const double ratio = params.sweeps > 1 ? std::pow(params.t_end / params.t_start, 1.0 / (params.sweeps - 1)) : 1.0;
  double t = params.t_start;
  for (std::uint32_t sweep = 0; sweep < params.sweeps; ++sweep, t *= ratio) {
    for (std::size_t i = 0; i < n; ++i) {
      const double delta = (x[i] ? -1.0 : 1.0) * h[i];
      const double u = uniform01(rng);
      if (delta > 0.0 && u >= std::exp(-delta / t)) continue;
      const double sign = x[i] ? -1.0 : 1.0;
      x[i] ^= 1;
      e += delta;
      for (std::size_t j = 0; j < n; ++j) h[j] += sign * c[j * n + i];
      if (e < best.energy - 1e-12) {
        best.state = x;
        best.energy = e;
      }
    }
  }
  best.energy = energy(q, best.state);  // drop accumulated rounding

  // Compile/schedule overhead: uniform in [0, n * sweeps / 4].
  const std::uint64_t work = static_cast<std::uint64_t>(params.sweeps) * n;
  best.steps_taken = work + rng() % (work / 4 + 1);
  return best;
}

}  // namespace asyncopt::qubo

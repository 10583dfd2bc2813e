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

// Test-only reference implementations, independent of the library code paths.

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <utility>
#include <vector>

namespace oracle {

using Matrix = std::vector<std::vector<double>>;

inline double se_kernel(const std::vector<double>& a, const std::vector<double>& b, double sf2, double ell) {
  double sq = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) sq += (a[i] - b[i]) * (a[i] - b[i]);
  return sf2 * std::exp(-sq / (2.0 * ell * ell));
}

/// Gauss-Jordan inverse with partial pivoting.
inline Matrix invert(Matrix a) {
  const std::size_t n = a.size();
  Matrix inv(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i) inv[i][i] = 1.0;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    for (std::size_t r = col + 1; r < n; ++r)
      if (std::abs(a[r][col]) > std::abs(a[piv][col])) piv = r;
    if (a[piv][col] == 0.0) throw std::runtime_error("singular");
    std::swap(a[piv], a[col]);
    std::swap(inv[piv], inv[col]);
    const double d = a[col][col];
    for (std::size_t c = 0; c < n; ++c) {
      a[col][c] /= d;
      inv[col][c] /= d;
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col) continue;
      const double f = a[r][col];
      if (f == 0.0) continue;
      for (std::size_t c = 0; c < n; ++c) {
        a[r][c] -= f * a[col][c];
        inv[r][c] -= f * inv[col][c];
      }
    }
  }
  return inv;
}

/// Posterior mean/variance from an explicit inverse of K + noise I.
inline std::pair<double, double> dense_posterior(const std::vector<std::vector<double>>& xs,
                                                 const std::vector<double>& ys, const std::vector<double>& x,
                                                 double sf2, double ell, double noise, double prior_mean) {
  const std::size_t n = xs.size();
  Matrix k(n, std::vector<double>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) k[i][j] = se_kernel(xs[i], xs[j], sf2, ell) + (i == j ? noise : 0.0);
  const Matrix kinv = invert(k);
  std::vector<double> ks(n);
  for (std::size_t i = 0; i < n; ++i) ks[i] = se_kernel(xs[i], x, sf2, ell);
  double mean = prior_mean;
  double quad = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      mean += ks[i] * kinv[i][j] * (ys[j] - prior_mean);
      quad += ks[i] * kinv[i][j] * ks[j];
    }
  }
  return {mean, se_kernel(x, x, sf2, ell) - quad};
}

/// Minimum of x^T Q x (upper-triangular convention) over all 2^n states.
/// Returns the minimum energy and every minimizing state.
inline std::pair<double, std::vector<std::vector<int>>> exhaustive_qubo(const Matrix& q, double tol = 1e-9) {
  const std::size_t n = q.size();
  double best = 0.0;
  std::vector<std::vector<int>> argmins;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    double e = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      if (!((mask >> i) & 1)) continue;
      for (std::size_t j = i; j < n; ++j)
        if ((mask >> j) & 1) e += q[i][j];
    }
    std::vector<int> state(n);
    for (std::size_t i = 0; i < n; ++i) state[i] = static_cast<int>((mask >> i) & 1);
    if (argmins.empty() || e < best - tol) {
      best = e;
      argmins = {state};
    } else if (std::abs(e - best) <= tol) {
      argmins.push_back(state);
    }
  }
  return {best, argmins};
}

/// Size of a maximum independent set by enumeration (n <= 20).
inline std::size_t max_independent_set(std::size_t n, const std::vector<std::pair<std::size_t, std::size_t>>& edges) {
  std::size_t best = 0;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    bool ok = true;
    for (const auto& [a, b] : edges)
      if (((mask >> a) & 1) && ((mask >> b) & 1)) ok = false;
    if (!ok) continue;
    std::size_t c = 0;
    for (std::size_t i = 0; i < n; ++i) c += (mask >> i) & 1;
    best = std::max(best, c);
  }
  return best;
}

}  // namespace oracle

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

#include <cmath>
#include <random>
#include <vector>

#include "asyncopt/bo/bayes_opt.hpp"
#include "asyncopt/error.hpp"
#include "doctest.h"

using namespace asyncopt;
using namespace asyncopt::bo;

namespace {

double parabola(const std::vector<double>& x) { return -(x[0] - 0.3) * (x[0] - 0.3); }

SearchSpace random_space(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-10.0, 10.0);
  std::uniform_real_distribution<double> w(1e-3, 5.0);
  const std::size_t d = 1 + rng() % 4;
  std::vector<double> lo(d), hi(d);
  for (std::size_t i = 0; i < d; ++i) {
    lo[i] = u(rng);
    hi[i] = lo[i] + w(rng);
  }
  return SearchSpace(lo, hi);
}

}  // namespace

TEST_CASE("search space validation") {
  CHECK_THROWS_AS(SearchSpace({0.0}, {0.0}), Error);
  CHECK_THROWS_AS(SearchSpace({0.0, 1.0}, {1.0}), Error);
  const SearchSpace s({0.0, -1.0}, {1.0, 1.0});
  CHECK(s.mean_width() == doctest::Approx(1.5));
  BayesianOptimizer bo(s);
  CHECK(bo.hyper().length_scale == doctest::Approx(0.3));
  CHECK(bo.hyper().signal_var == 1.0);
  CHECK(bo.hyper().noise_var == 1e-4);
}

TEST_CASE("suggest is deterministic for a seed") {
  const SearchSpace s({0.0, 0.0}, {1.0, 2.0});
  BayesianOptimizer a(s, {.seed = 42});
  BayesianOptimizer b(s, {.seed = 42});
  BayesianOptimizer c(s, {.seed = 43});
  const auto first = a.suggest();
  CHECK(first == b.suggest());
  CHECK(first != c.suggest());
}

TEST_CASE("suggestions stay within bounds") {
  std::mt19937_64 rng(8);
  for (int i = 0; i < 100; ++i) {
    const SearchSpace s = random_space(rng);
    BayesianOptimizer bo(s, {.n_init = 2, .n_cand = 32, .seed = rng()});
    for (int k = 0; k < 6; ++k) {
      const auto x = bo.suggest();
      REQUIRE(s.contains(x));
      double y = 0.0;
      for (double v : x) y -= v * v;
      bo.update(x, y);
    }
  }
}

TEST_CASE("model-based suggestion equals exhaustive re-scoring of the candidate set") {
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int state = 0; state < 50; ++state) {
    const SearchSpace s({0.0, 0.0}, {1.0, 1.0});
    BayesianOptimizer bo(s, {.n_init = 3, .n_cand = 128, .seed = rng()});
    const int n_obs = 3 + static_cast<int>(rng() % 6);
    for (int k = 0; k < n_obs; ++k) {
      const auto x = bo.suggest();
      bo.update(x, std::sin(7.0 * x[0]) * std::cos(5.0 * x[1]) + 0.1 * u(rng));
    }
    const auto pick = bo.suggest();
    const auto& cands = bo.last_candidates();
    REQUIRE(cands.size() == 128);
    const double best = *bo.y_best();
    std::size_t arg = 0;
    double arg_score = -1.0;
    for (std::size_t c = 0; c < cands.size(); ++c) {
      const Prediction p = gp_predict(*bo.model(), cands[c]);
      const double sigma = std::sqrt(p.var);
      const double imp = p.mean - best - 0.01;
      double ei = sigma > 0 ? imp * normal_cdf(imp / sigma) + sigma * normal_pdf(imp / sigma) : std::max(imp, 0.0);
      ei = std::max(ei, 0.0);
      if (ei > arg_score) {
        arg_score = ei;
        arg = c;
      }
    }
    CHECK(pick == cands[arg]);
  }
}

TEST_CASE("ties go to the lowest candidate index") {
  // A vanishing length scale makes every candidate look like the prior.
  const SearchSpace s({0.0}, {1.0});
  BayesianOptimizer bo(s, {.n_init = 1, .n_cand = 64, .hyper = GpHyper{1.0, 1e-9, 1e-4}, .seed = 5});
  bo.update(bo.suggest(), 0.0);
  const auto pick = bo.suggest();
  const auto& scores = bo.last_scores();
  for (double sc : scores) CHECK(sc == scores.front());
  CHECK(pick == bo.last_candidates().front());
}

TEST_CASE("update keeps a monotone incumbent and rejects bad input") {
  const SearchSpace s({0.0}, {1.0});
  BayesianOptimizer bo(s);
  CHECK_FALSE(bo.y_best().has_value());
  const std::vector<double> x{0.5};
  bo.update(x, 1.0);
  CHECK(*bo.y_best() == 1.0);
  bo.update(std::vector<double>{0.25}, 3.0);
  CHECK(*bo.y_best() == 3.0);
  bo.update(std::vector<double>{0.75}, 2.0);
  CHECK(*bo.y_best() == 3.0);
  CHECK(bo.incumbent()->x[0] == 0.25);
  try {
    bo.update(std::vector<double>{1.5}, 0.0);
    FAIL("expected OutOfBounds");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::OutOfBounds);
  }
  CHECK_THROWS_AS(bo.update(std::vector<double>{0.1, 0.2}, 0.0), Error);

  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> u(-5.0, 5.0);
  double last = *bo.y_best();
  for (int i = 0; i < 30; ++i) {
    bo.update(bo.suggest(), u(rng));
    CHECK(*bo.y_best() >= last);
    last = *bo.y_best();
  }
}

TEST_CASE("interleaved suggest/update replays identically") {
  auto trajectory = [] {
    BayesianOptimizer bo(SearchSpace({0.5, 0.5}, {8.0, 5.0}), {.seed = 7});
    std::vector<std::vector<double>> xs;
    for (int i = 0; i < 15; ++i) {
      auto x = bo.suggest();
      bo.update(x, -std::abs(x[0] - 3.0) - std::abs(x[1] - 2.0));
      xs.push_back(std::move(x));
    }
    return xs;
  };
  CHECK(trajectory() == trajectory());
}

TEST_CASE("sanity convergence on a 1-D parabola") {
  int hits = 0;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    BayesianOptimizer bo(SearchSpace({0.0}, {1.0}), {.n_init = 5, .seed = seed});
    for (int i = 0; i < 20; ++i) {
      const auto x = bo.suggest();
      bo.update(x, parabola(x));
    }
    if (*bo.y_best() >= -0.01) ++hits;
  }
  CHECK(hits >= 18);
}

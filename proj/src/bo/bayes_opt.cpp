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

#include "asyncopt/bo/bayes_opt.hpp"

#include <algorithm>
#include <numeric>

#include "asyncopt/error.hpp"
#include "asyncopt/seed.hpp"

namespace asyncopt::bo {

BayesianOptimizer::BayesianOptimizer(SearchSpace space, BayesOptConfig config)
    : space_(std::move(space)), config_(config), rng_(config.seed) {
  if (space_.dims() == 0) throw Error(ErrorCode::ConfigError, "empty search space");
  if (config_.n_cand == 0) throw Error(ErrorCode::ConfigError, "n_cand must be positive");
  if (!(config_.xi >= 0.0)) throw Error(ErrorCode::ConfigError, "xi must be nonnegative");
  hyper_ = config_.hyper.value_or(GpHyper{1.0, 0.2 * space_.mean_width(), 1e-4});
  hyper_.validate();
}

std::vector<double> BayesianOptimizer::uniform_point() {
  std::vector<double> x(space_.dims());
  for (std::size_t i = 0; i < x.size(); ++i)
    x[i] = space_.lower[i] + uniform01(rng_) * (space_.upper[i] - space_.lower[i]);
  return x;
}

std::vector<double> BayesianOptimizer::suggest() {
  ++suggest_calls_;
  if (suggest_calls_ <= config_.n_init || !model_) return uniform_point();

  const double best = *y_best();
  last_candidates_.clear();
  last_scores_.clear();
  last_candidates_.reserve(config_.n_cand);
  last_scores_.reserve(config_.n_cand);
  std::size_t arg = 0;
  for (std::size_t c = 0; c < config_.n_cand; ++c) {
    last_candidates_.push_back(uniform_point());
    const Prediction p = gp_predict(*model_, last_candidates_.back());
    last_scores_.push_back(expected_improvement(p.mean, p.var, best, config_.xi));
    if (last_scores_[c] > last_scores_[arg]) arg = c;
  }
  return last_candidates_[arg];
}

void BayesianOptimizer::update(std::span<const double> x, double y) {
  if (x.size() != space_.dims())
    throw Error(ErrorCode::DimensionMismatch,
                "expected " + std::to_string(space_.dims()) + " parameters, got " + std::to_string(x.size()));
  if (!space_.contains(x)) throw Error(ErrorCode::OutOfBounds, "observation outside the search space");
  history_.push_back(Observation{{x.begin(), x.end()}, y});
  const double mean =
      std::accumulate(history_.begin(), history_.end(), 0.0, [](double s, const Observation& o) { return s + o.y; }) /
      static_cast<double>(history_.size());
  model_ = gp_fit(history_, hyper_, mean);
}

std::optional<double> BayesianOptimizer::y_best() const {
  if (auto inc = incumbent()) return inc->y;
  return std::nullopt;
}

std::optional<Observation> BayesianOptimizer::incumbent() const {
  if (history_.empty()) return std::nullopt;
  // First occurrence wins ties.
  return *std::max_element(history_.begin(), history_.end(),
                           [](const Observation& a, const Observation& b) { return a.y < b.y; });
}

}  // namespace asyncopt::bo

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

#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <vector>

#include "asyncopt/bo/gp.hpp"
#include "asyncopt/search.hpp"

namespace asyncopt::bo {

struct BayesOptConfig {
  std::size_t n_init = 5;
  std::size_t n_cand = 512;
  double xi = 0.01;
  /// Defaults to sigma_f^2 = 1, l = 0.2 * mean box width, sigma_n^2 = 1e-4.
  std::optional<GpHyper> hyper;
  std::uint64_t seed = 0;
};

/// GP surrogate + expected improvement over a seeded uniform candidate set.
/// The GP uses a constant prior mean equal to the mean of the observed y.
class BayesianOptimizer final : public SearchAlgorithm {
 public:
  BayesianOptimizer(SearchSpace space, BayesOptConfig config = {});

  std::size_t dims() const override { return space_.dims(); }

  /// Uniform points for the first n_init calls (or while nothing has been
  /// observed), then the EI argmax over n_cand fresh uniform candidates.
  /// Ties go to the lowest candidate index.
  std::vector<double> suggest() override;

  /// Throws OutOfBounds / DimensionMismatch.
  void update(std::span<const double> x, double y) override;
  void update(const Observation& obs) { update(obs.x, obs.y); }

  const SearchSpace& space() const { return space_; }
  const GpHyper& hyper() const { return hyper_; }
  const BayesOptConfig& config() const { return config_; }
  const std::vector<Observation>& history() const { return history_; }
  std::optional<double> y_best() const;
  std::optional<Observation> incumbent() const;
  const std::optional<GpModel>& model() const { return model_; }
  std::size_t suggestions_made() const { return suggest_calls_; }

  /// Candidate set and EI scores behind the last model-based suggestion.
  const std::vector<std::vector<double>>& last_candidates() const { return last_candidates_; }
  const std::vector<double>& last_scores() const { return last_scores_; }

 private:
  std::vector<double> uniform_point();

  SearchSpace space_;
  BayesOptConfig config_;
  GpHyper hyper_;
  std::mt19937_64 rng_;
  std::vector<Observation> history_;
  std::optional<GpModel> model_;
  std::size_t suggest_calls_ = 0;
  std::vector<std::vector<double>> last_candidates_;
  std::vector<double> last_scores_;
};

}  // namespace asyncopt::bo

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
#include <span>
#include <vector>

#include <Eigen/Core>

namespace asyncopt::bo {

/// Axis-aligned box; lower[i] < upper[i].
struct SearchSpace {
  std::vector<double> lower;
  std::vector<double> upper;

  SearchSpace() = default;
  SearchSpace(std::vector<double> lo, std::vector<double> hi);  // validates

  std::size_t dims() const { return lower.size(); }
  bool contains(std::span<const double> x) const;
  double mean_width() const;
};

struct Observation {
  std::vector<double> x;
  double y = 0.0;  // higher is better
};

/// Squared-exponential kernel hyperparameters.
struct GpHyper {
  double signal_var = 1.0;    // sigma_f^2 > 0
  double length_scale = 0.2;  // l > 0
  double noise_var = 1e-4;    // sigma_n^2 >= 0

  void validate() const;
};

/// Posterior state of a zero-mean GP on (y - prior_mean).
struct GpModel {
  GpHyper hyper;
  double prior_mean = 0.0;
  Eigen::MatrixXd train_x;  // n x d
  Eigen::VectorXd train_y;  // n
  Eigen::MatrixXd chol;     // lower factor of K + sigma_n^2 I
  Eigen::VectorXd alpha;    // (K + sigma_n^2 I)^-1 (y - prior_mean)

  std::size_t size() const { return static_cast<std::size_t>(train_y.size()); }
  std::size_t dims() const { return static_cast<std::size_t>(train_x.cols()); }
};

struct Prediction {
  double mean = 0.0;
  double var = 0.0;
};

/// sigma_f^2 * exp(-|x - x2|^2 / (2 l^2)).
double kernel(std::span<const double> x, std::span<const double> x2, const GpHyper& hyper);

/// Cholesky fit; throws NotPositiveDefinite if K + sigma_n^2 I is singular.
GpModel gp_fit(std::span<const Observation> obs, const GpHyper& hyper, double prior_mean = 0.0);

Prediction gp_predict(const GpModel& model, std::span<const double> x);

double normal_pdf(double z);
double normal_cdf(double z);

/// Maximization form of expected improvement over `y_best` with margin `xi`.
double expected_improvement(double mean, double var, double y_best, double xi);

}  // namespace asyncopt::bo

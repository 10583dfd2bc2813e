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

#include "asyncopt/bo/gp.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <Eigen/Cholesky>

#include "asyncopt/error.hpp"

namespace asyncopt::bo {

SearchSpace::SearchSpace(std::vector<double> lo, std::vector<double> hi) : lower(std::move(lo)), upper(std::move(hi)) {
  if (lower.empty() || lower.size() != upper.size())
    throw Error(ErrorCode::ConfigError, "search space needs matching, nonempty bounds");
  for (std::size_t i = 0; i < lower.size(); ++i) {
    if (!(lower[i] < upper[i]))
      throw Error(ErrorCode::ConfigError, "search space bound " + std::to_string(i) + " has lower >= upper");
  }
}

bool SearchSpace::contains(std::span<const double> x) const {
  if (x.size() != dims()) return false;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!(x[i] >= lower[i] && x[i] <= upper[i])) return false;
  }
  return true;
}

double SearchSpace::mean_width() const {
  double sum = 0.0;
  for (std::size_t i = 0; i < dims(); ++i) sum += upper[i] - lower[i];
  return sum / static_cast<double>(dims());
}

void GpHyper::validate() const {
  if (!(signal_var > 0.0)) throw Error(ErrorCode::ConfigError, "signal_var must be positive");
  if (!(length_scale > 0.0)) throw Error(ErrorCode::ConfigError, "length_scale must be positive");
  if (!(noise_var >= 0.0)) throw Error(ErrorCode::ConfigError, "noise_var must be nonnegative");
}

double kernel(std::span<const double> x, std::span<const double> x2, const GpHyper& hyper) {
  if (x.size() != x2.size())
    throw Error(ErrorCode::DimensionMismatch,
                "kernel inputs have lengths " + std::to_string(x.size()) + " and " + std::to_string(x2.size()));
  double sq = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double d = x[i] - x2[i];
    sq += d * d;
  }
  return hyper.signal_var * std::exp(-sq / (2.0 * hyper.length_scale * hyper.length_scale));
}

namespace {

std::span<const double> row_span(const Eigen::MatrixXd& m, Eigen::Index r, std::vector<double>& buf) {
  buf.resize(static_cast<std::size_t>(m.cols()));
  for (Eigen::Index c = 0; c < m.cols(); ++c) buf[static_cast<std::size_t>(c)] = m(r, c);
  return buf;
}

}  // namespace

GpModel gp_fit(std::span<const Observation> obs, const GpHyper& hyper, double prior_mean) {
  hyper.validate();
  if (obs.empty()) throw Error(ErrorCode::ConfigError, "gp_fit needs at least one observation");
  const auto n = static_cast<Eigen::Index>(obs.size());
  const auto d = static_cast<Eigen::Index>(obs.front().x.size());

  GpModel m;
  m.hyper = hyper;
  m.prior_mean = prior_mean;
  m.train_x.resize(n, d);
  m.train_y.resize(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const auto& o = obs[static_cast<std::size_t>(i)];
    if (static_cast<Eigen::Index>(o.x.size()) != d)
      throw Error(ErrorCode::DimensionMismatch, "observations have differing dimensionality");
    for (Eigen::Index j = 0; j < d; ++j) m.train_x(i, j) = o.x[static_cast<std::size_t>(j)];
    m.train_y(i) = o.y;
  }

  Eigen::MatrixXd gram(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j <= i; ++j) {
      const double k = kernel(obs[static_cast<std::size_t>(i)].x, obs[static_cast<std::size_t>(j)].x, hyper);
      gram(i, j) = k;
      gram(j, i) = k;
    }
    gram(i, i) += hyper.noise_var;
  }

  Eigen::LLT<Eigen::MatrixXd> llt(gram);
  if (llt.info() != Eigen::Success)
    throw Error(ErrorCode::NotPositiveDefinite, "K + noise_var * I is not positive definite");
  m.chol = llt.matrixL();
  if ((m.chol.diagonal().array() <= 0.0).any() || !m.chol.allFinite())
    throw Error(ErrorCode::NotPositiveDefinite, "degenerate Cholesky factor");
  m.alpha = llt.solve((m.train_y.array() - prior_mean).matrix());
  return m;
}

Prediction gp_predict(const GpModel& model, std::span<const double> x) {
  if (x.size() != model.dims())
    throw Error(ErrorCode::DimensionMismatch,
                "model is " + std::to_string(model.dims()) + "-dimensional, got " + std::to_string(x.size()));
  const auto n = model.train_x.rows();
  Eigen::VectorXd k_star(n);
  std::vector<double> buf;
  for (Eigen::Index i = 0; i < n; ++i) k_star(i) = kernel(row_span(model.train_x, i, buf), x, model.hyper);

  Prediction p;
  p.mean = model.prior_mean + k_star.dot(model.alpha);
  const Eigen::VectorXd v = model.chol.triangularView<Eigen::Lower>().solve(k_star);
  p.var = std::max(0.0, kernel(x, x, model.hyper) - v.squaredNorm());
  return p;
}

double normal_pdf(double z) { return std::exp(-0.5 * z * z) / std::sqrt(2.0 * std::numbers::pi); }

double normal_cdf(double z) { return 0.5 * std::erfc(-z / std::numbers::sqrt2); }

double expected_improvement(double mean, double var, double y_best, double xi) {
  const double improvement = mean - y_best - xi;
  const double sigma = std::sqrt(std::max(var, 0.0));
  if (sigma == 0.0) return std::max(improvement, 0.0);
  const double z = improvement / sigma;
  return std::max(0.0, improvement * normal_cdf(z) + sigma * normal_pdf(z));
}

}  // namespace asyncopt::bo

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
#include <string>
#include <vector>

#include "asyncopt/graph/process.hpp"
#include "asyncopt/qubo/problem.hpp"
#include "asyncopt/qubo/qubo.hpp"

namespace asyncopt::sched {

using graph::Duration;

struct LatencyModel {
  std::uint32_t min_steps = 1;
  std::uint32_t max_steps = 1;
};

/// How an idle evaluator waits for work. Blocking is the classic black box
/// (recv inside the step); Probe never blocks.
enum class RequestMode { Probe, Blocking };

struct EvalConfig {
  qubo::SatelliteProblem problem;
  LatencyModel latency;
  qubo::AnnealParams solver;
  std::uint64_t seed = 0;
  Duration step_duration{0};  // modeled cost of every process step
  RequestMode mode = RequestMode::Probe;

  void validate() const;  // throws ConfigError
};

struct EvaluationRecord {
  std::uint64_t index = 0;  // 0-based request counter
  std::vector<double> x;
  std::uint32_t latency_steps = 0;
  double score = 0.0;  // -1 for a malformed request
  std::uint64_t solver_seed = 0;
  std::uint64_t solver_steps = 0;
  Duration requested_at{0};
  Duration replied_at{0};
  std::optional<std::string> diagnostic;
};

/// Solver seed for the `index`-th request.
std::uint64_t solver_seed(const EvalConfig& config, std::uint64_t index);

/// The evaluation the process performs, without the process around it.
EvaluationRecord evaluate(const EvalConfig& config, std::span<const double> x, std::uint64_t index);

/// Black-box evaluator of the satellite scheduling workload.
///
/// Ports: "request_in" (ParamVector), "result_out" (ResultTuple). Each request
/// occupies a seeded number of steps in [min_steps, max_steps]; the reply is
/// sent on the last of them. Ends once the requester has stopped.
class SchedulingRuntime final : public graph::Process {
 public:
  SchedulingRuntime(std::string name, EvalConfig config);

  graph::StepOutcome step(graph::StepContext& ctx) override;

  graph::Port& request_in() { return *request_in_; }
  graph::Port& result_out() { return *result_out_; }
  const EvalConfig& config() const { return config_; }
  /// Completed evaluations, in request order. Read after the run.
  const std::vector<EvaluationRecord>& records() const { return records_; }
  bool busy() const { return remaining_ > 0; }

 private:
  std::optional<std::vector<double>> take_request(graph::StepContext& ctx, bool& finished);

  EvalConfig config_;
  graph::Port* request_in_;
  graph::Port* result_out_;
  std::mt19937_64 latency_rng_;
  std::uint64_t counter_ = 0;
  std::uint32_t remaining_ = 0;
  std::uint32_t latency_ = 0;
  std::vector<double> current_;
  Duration requested_at_{0};
  std::vector<EvaluationRecord> records_;
};

}  // namespace asyncopt::sched

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

#include <chrono>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "asyncopt/graph/graph.hpp"
#include "asyncopt/graph/process.hpp"
#include "asyncopt/graph/sleep_policy.hpp"
#include "asyncopt/search.hpp"

namespace asyncopt::opt {

using graph::Duration;

struct LoopAction {
  enum class Kind { Stopped, Paused, Slept, Forwarded, Suggested, Finished, Rejected };

  Kind kind = Kind::Finished;
  Duration slept{0};                           // Slept, Paused
  std::optional<graph::ResultTuple> result;    // Forwarded, Rejected
  std::vector<double> suggestion;              // Suggested
};

std::string to_string(LoopAction::Kind kind);
std::string describe(const LoopAction& action);

/// One completed evaluation as seen by the optimizer.
struct IterationRecord {
  std::uint64_t iter = 0;  // 1-based
  std::vector<double> x;
  double y = 0.0;
  double y_best = 0.0;
  std::uint64_t probe_attempts = 0;  // every probe while waiting, including the hit
  std::uint64_t sleeps = 0;
};

struct AsyncOptConfig {
  std::uint64_t budget = 10;
  graph::SleepPolicy sleep;

  void validate() const;
};

/// Wraps a search algorithm as an asynchronous process.
///
/// Ports: "candidate_out" (ParamVector), "result_in" (ResultTuple).
/// Variable: "done" (flag), readable through a Ref port.
///
/// One loop iteration per step: command check, probe-and-forward, budget
/// check, then suggest. At most one candidate is in flight.
class AsyncOptimizer final : public graph::Process {
 public:
  AsyncOptimizer(std::string name, std::unique_ptr<SearchAlgorithm> search, AsyncOptConfig config);

  graph::StepOutcome step(graph::StepContext& ctx) override;
  bool handles_commands() const override { return true; }

  /// The loop body, exposed for driving the optimizer by hand.
  LoopAction loop_step(graph::StepContext& ctx);

  graph::Port& candidate_out() { return *candidate_out_; }
  graph::Port& result_in() { return *result_in_; }

  bool done() const;
  bool stopped() const { return stopped_; }
  bool paused() const { return paused_; }
  /// Set when the evaluator vanished or a send failed.
  const std::optional<std::string>& failure() const { return failure_; }
  /// Run-clock time at which done was set.
  std::optional<Duration> done_at() const { return done_at_; }

  std::uint64_t budget() const { return config_.budget; }
  std::uint64_t completed() const { return completed_; }
  std::uint64_t in_flight() const { return in_flight_; }
  std::uint64_t probe_attempts() const { return probe_attempts_; }  // empty probes
  std::uint64_t total_probes() const { return total_probes_; }
  std::uint64_t rejected() const { return rejected_; }

  const std::vector<IterationRecord>& records() const { return records_; }
  const std::vector<LoopAction::Kind>& actions() const { return actions_; }
  const SearchAlgorithm& search() const { return *search_; }

 private:
  void set_done(graph::StepContext& ctx);
  LoopAction fail(graph::StepContext& ctx, std::string why);

  std::unique_ptr<SearchAlgorithm> search_;
  AsyncOptConfig config_;
  graph::Port* candidate_out_;
  graph::Port* result_in_;
  graph::Variable* done_;

  std::uint64_t completed_ = 0;
  std::uint64_t in_flight_ = 0;
  std::uint64_t probe_attempts_ = 0;
  std::uint64_t total_probes_ = 0;
  std::uint64_t rejected_ = 0;
  std::uint64_t empty_streak_ = 0;  // drives SleepPolicy backoff
  std::uint64_t iter_probes_ = 0;
  std::uint64_t iter_sleeps_ = 0;
  std::optional<std::vector<double>> pending_;
  std::optional<double> y_best_;
  bool paused_ = false;
  bool stopped_ = false;
  bool finished_ = false;
  std::optional<std::string> failure_;
  std::optional<Duration> done_at_;
  std::vector<IterationRecord> records_;
  std::vector<LoopAction::Kind> actions_;
};

/// Synchronous baseline: sends X' and blocks on the result inside a single
/// step. Same ports and done flag as AsyncOptimizer.
class BlockingOptimizer final : public graph::Process {
 public:
  BlockingOptimizer(std::string name, std::unique_ptr<SearchAlgorithm> search, std::uint64_t budget);

  graph::StepOutcome step(graph::StepContext& ctx) override;

  std::uint64_t completed() const { return completed_; }
  const std::vector<IterationRecord>& records() const { return records_; }

 private:
  std::unique_ptr<SearchAlgorithm> search_;
  std::uint64_t budget_;
  std::uint64_t completed_ = 0;
  std::optional<double> y_best_;
  std::vector<IterationRecord> records_;
};

struct AwaitResult {
  enum class Status { Finished, TimedOut };

  Status status = Status::TimedOut;
  std::chrono::steady_clock::time_point observed_at;
  std::uint64_t polls = 0;

  bool finished() const { return status == Status::Finished; }
};

/// Polls the done flag every `poll_interval` on the wall clock until it reads
/// true or `timeout` elapses. Never blocks the target.
AwaitResult await_done(const graph::RefPort& done, Duration poll_interval, Duration timeout);

}  // namespace asyncopt::opt

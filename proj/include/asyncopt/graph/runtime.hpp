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

#include <atomic>
#include <chrono>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "asyncopt/graph/graph.hpp"
#include "asyncopt/graph/trace.hpp"

namespace asyncopt::graph {

enum class RunMode { SyncBarrier, Async };

/// RealTime runs every process on the wall clock. Virtual (Async mode only)
/// keeps one thread per process but hands execution to the process with the
/// smallest local time, which makes sleeps, step costs and probe counts
/// reproducible.
enum class ClockKind { RealTime, Virtual };

std::string to_string(RunMode mode);
std::string to_string(ClockKind clock);

struct RunLimits {
  std::uint64_t max_steps = 1'000'000'000;
  Duration watchdog_timeout = std::chrono::seconds(2);
  ClockKind clock = ClockKind::RealTime;
  /// Virtual clock only: time charged for every step.
  Duration virtual_step_cost = std::chrono::microseconds(1);

  void validate(RunMode mode) const;  // throws ConfigError
};

struct RunReport {
  std::vector<std::string> process_names;       // by ProcessId
  std::map<ProcessId, std::uint64_t> steps_executed;
  std::map<ProcessId, std::uint64_t> probe_counts;
  bool deadlock_detected = false;
  std::optional<std::string> deadlock_diagnostic;
  bool step_limit_reached = false;
  std::vector<std::string> process_errors;
  Duration wall_time{0};
  Duration virtual_time{0};
  std::uint64_t barrier_steps = 0;  // SyncBarrier only
};

namespace detail {
class ProcessControl;
class RunState;
}  // namespace detail

/// Executes a ProcessGraph. A graph can be run once.
class Runtime {
 public:
  Runtime(ProcessGraph& graph, RunMode mode, RunLimits limits = {},
          std::shared_ptr<TraceRecorder> recorder = {});
  ~Runtime();
  Runtime(const Runtime&) = delete;
  Runtime& operator=(const Runtime&) = delete;

  void start();
  /// Blocks until every process terminated or the watchdog fired.
  RunReport wait();

  /// Enqueues `cmd` on the target's management channel.
  void issue_command(ProcessId target, RuntimeCommand cmd);

  bool running() const;
  std::uint64_t steps_of(ProcessId id) const;

 private:
  ProcessGraph& graph_;
  RunMode mode_;
  RunLimits limits_;
  std::unique_ptr<detail::RunState> state_;
  bool started_ = false;
  bool joined_ = false;
};

/// start() + wait().
RunReport run(ProcessGraph& graph, RunMode mode, RunLimits limits = {},
              std::shared_ptr<TraceRecorder> recorder = {});

}  // namespace asyncopt::graph

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
#include <condition_variable>
#include <cstdint>
#include <deque>
#include <memory>
#include <mutex>
#include <optional>
#include <set>
#include <string>
#include <thread>
#include <vector>

#include "asyncopt/graph/runtime.hpp"
#include "channel.hpp"

namespace asyncopt::graph::detail {

/// Unwinds a process context when the run is torn down (deadlock or
/// destruction). Deliberately not a std::exception.
struct RunAborted {};

enum class ProcState { Pending, Running, BlockedRecv, BlockedSend, Sleeping, Paused, AtBarrier, Done };

enum class BlockKind { Recv, Send };

class RunState;

/// Hands execution to exactly one process at a time, always the one with the
/// smallest local time (ties in FIFO order).
class VirtualScheduler {
 public:
  VirtualScheduler(std::size_t n, const std::atomic<bool>& aborted);

  void start();
  void acquire(ProcessId id);
  void advance_and_yield(ProcessId id, Duration d);
  void block_on(ProcessId id, const Channel* ch);
  void channel_changed(const Channel* ch);
  void external_begin(ProcessId id);
  void external_end(ProcessId id);
  void finish(ProcessId id);
  void wake_all();

  Duration local_time(ProcessId id) const;
  Duration max_time() const;
  bool deadlocked() const;

 private:
  struct Ready {
    Duration at;
    std::uint64_t seq;
    ProcessId id;
    auto operator<=>(const Ready&) const = default;
  };

  void enqueue_locked(ProcessId id, Duration at);
  void dispatch_locked();
  void wait_turn_locked(std::unique_lock<std::mutex>& lk, ProcessId id);

  mutable std::mutex mu_;
  std::condition_variable cv_;
  const std::atomic<bool>& aborted_;
  std::set<Ready> ready_;
  std::vector<Duration> local_;
  std::vector<const Channel*> waiting_on_;
  std::vector<char> done_;
  std::vector<char> external_;
  std::optional<ProcessId> running_;
  Duration now_{0};
  std::uint64_t seq_ = 0;
  bool deadlock_ = false;
};

/// Per-process runtime state; also the StepContext handed to step().
class ProcessControl final : public StepContext {
 public:
  ProcessControl(RunState& run, Process& proc);

  // StepContext
  std::optional<RuntimeCommand> poll_command() override;
  void sleep(Duration d) override;
  void work_for(Duration d) override;
  Duration now() const override;
  std::uint64_t step_index() const override { return step_index_; }
  void trace(TraceKind kind, std::string detail) override;

  // Port hooks.
  void wait_channel(const Port& port, Channel& ch, BlockKind kind);
  void channel_changed(Channel& ch);
  void note_transfer();
  void note_probe() { probes_.fetch_add(1, std::memory_order_relaxed); }

  // Runtime side.
  void enqueue_command(RuntimeCommand cmd);
  /// Applies pending commands for processes that do not handle their own.
  /// Blocks while paused. Returns true when Stop was observed.
  bool apply_runtime_commands();
  void wake();
  std::string describe() const;

  Process& process() { return proc_; }
  ProcessId id() const { return id_; }
  std::uint64_t steps() const { return steps_.load(); }
  std::uint64_t probes() const { return probes_.load(); }
  ProcState state() const { return state_.load(); }
  void set_state(ProcState s) { state_.store(s); }
  void set_step_index(std::uint64_t i) { step_index_ = i; }
  void count_step() { steps_.fetch_add(1); }
  bool terminated() const { return state_.load() == ProcState::Done; }

  // Sync-barrier handshake, guarded by RunState::sync_mu_.
  bool go = false;
  bool reported = false;
  bool finished = false;

 private:
  void wall_wait(Duration d, bool interruptible);

  RunState& run_;
  Process& proc_;
  ProcessId id_;
  std::atomic<ProcState> state_{ProcState::Pending};
  std::atomic<std::uint64_t> steps_{0};
  std::atomic<std::uint64_t> probes_{0};
  std::uint64_t step_index_ = 0;

  mutable std::mutex mu_;
  std::condition_variable cv_;
  std::deque<RuntimeCommand> commands_;
  bool stop_issued_ = false;
  std::string blocked_on_;
};

class RunState {
 public:
  RunState(ProcessGraph& graph, RunMode mode, RunLimits limits, std::shared_ptr<TraceRecorder> recorder);

  void launch();
  RunReport join();
  void abort();

  bool aborted() const { return aborted_.load(); }
  bool virtual_clock() const { return scheduler_ != nullptr; }
  VirtualScheduler& scheduler() { return *scheduler_; }
  TraceRecorder* recorder() const { return recorder_.get(); }
  Duration wall_elapsed() const { return std::chrono::steady_clock::now() - start_; }
  void note_progress() { progress_.fetch_add(1, std::memory_order_relaxed); }
  ProcessControl& control(ProcessId id) { return *controls_.at(id); }
  std::size_t size() const { return controls_.size(); }
  bool finished() const { return finished_.load(); }

 private:
  void async_worker(ProcessControl& c);
  void sync_worker(ProcessControl& c);
  void sync_coordinator();
  void watchdog();
  void finish_process(ProcessControl& c);
  void record_error(ProcessControl& c, const std::string& what);
  void trigger_deadlock(const std::string& reason);

  ProcessGraph& graph_;
  RunMode mode_;
  RunLimits limits_;
  std::shared_ptr<TraceRecorder> recorder_;
  std::vector<std::unique_ptr<ProcessControl>> controls_;
  std::unique_ptr<VirtualScheduler> scheduler_;

  std::atomic<bool> aborted_{false};
  std::atomic<bool> finished_{false};
  std::atomic<std::uint64_t> progress_{0};
  std::atomic<bool> step_limit_{false};
  std::chrono::steady_clock::time_point start_;
  std::chrono::steady_clock::time_point end_;

  std::mutex report_mu_;
  std::vector<std::string> errors_;
  bool deadlock_ = false;
  std::optional<std::string> deadlock_diagnostic_;

  // SyncBarrier coordination.
  std::mutex sync_mu_;
  std::condition_variable sync_cv_;
  std::uint64_t current_step_ = 0;
  std::size_t reported_count_ = 0;
  bool shutdown_ = false;
  std::atomic<std::uint64_t> barrier_steps_{0};

  std::vector<std::thread> workers_;
  std::thread coordinator_;
  std::thread watchdog_;
  std::mutex watchdog_mu_;
  std::condition_variable watchdog_cv_;
};

}  // namespace asyncopt::graph::detail

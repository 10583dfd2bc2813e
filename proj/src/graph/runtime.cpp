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

#include "asyncopt/graph/runtime.hpp"

#include <algorithm>
#include <sstream>

#include "asyncopt/error.hpp"
#include "control.hpp"

namespace asyncopt::graph {

namespace {

using Clock = std::chrono::steady_clock;

long long to_ms(Duration d) { return std::chrono::duration_cast<std::chrono::milliseconds>(d).count(); }

}  // namespace

std::string to_string(RunMode mode) { return mode == RunMode::SyncBarrier ? "sync-barrier" : "async"; }

std::string to_string(ClockKind clock) { return clock == ClockKind::RealTime ? "real" : "virtual"; }

void RunLimits::validate(RunMode mode) const {
  if (max_steps == 0) throw Error(ErrorCode::ConfigError, "max_steps must be positive");
  if (watchdog_timeout <= Duration::zero()) throw Error(ErrorCode::ConfigError, "watchdog_timeout must be positive");
  if (clock == ClockKind::Virtual) {
    if (mode != RunMode::Async) throw Error(ErrorCode::ConfigError, "the virtual clock requires Async mode");
    if (virtual_step_cost <= Duration::zero())
      throw Error(ErrorCode::ConfigError, "virtual_step_cost must be positive");
  }
}

namespace detail {

// ---------------------------------------------------------------------------
// ProcessControl

ProcessControl::ProcessControl(RunState& run, Process& proc) : run_(run), proc_(proc), id_(proc.id()) {}

std::optional<RuntimeCommand> ProcessControl::poll_command() {
  std::optional<RuntimeCommand> cmd;
  {
    std::lock_guard lk(mu_);
    if (commands_.empty()) return std::nullopt;
    cmd = commands_.front();
    commands_.pop_front();
  }
  trace(TraceKind::Command, "observed " + to_string(*cmd));
  return cmd;
}

void ProcessControl::wall_wait(Duration d, bool interruptible) {
  std::unique_lock lk(mu_);
  cv_.wait_for(lk, d, [&] { return run_.aborted() || (interruptible && !commands_.empty()); });
  if (run_.aborted()) throw RunAborted{};
}

void ProcessControl::sleep(Duration d) {
  trace(TraceKind::Sleep, std::to_string(std::chrono::duration_cast<std::chrono::microseconds>(d).count()) + "us");
  const ProcState prev = state_.exchange(ProcState::Sleeping);
  if (run_.virtual_clock()) {
    run_.scheduler().advance_and_yield(id_, d);
  } else {
    wall_wait(d, true);
  }
  state_.store(prev);
}

void ProcessControl::work_for(Duration d) {
  if (run_.virtual_clock()) {
    run_.scheduler().advance_and_yield(id_, d);
  } else if (d > Duration::zero()) {
    wall_wait(d, false);
  }
}

Duration ProcessControl::now() const {
  if (run_.virtual_clock()) return run_.scheduler().local_time(id_);
  return run_.wall_elapsed();
}

void ProcessControl::trace(TraceKind kind, std::string detail) {
  if (auto* rec = run_.recorder()) rec->record(TraceEvent{now(), proc_.name(), kind, std::move(detail)});
}

void ProcessControl::wait_channel(const Port& port, Channel& ch, BlockKind kind) {
  {
    std::lock_guard lk(mu_);
    blocked_on_ = (kind == BlockKind::Recv ? "recv on " : "send on ") + port.qualified_name() +
                  (kind == BlockKind::Recv ? " (channel empty)" : " (channel full)");
  }
  state_.store(kind == BlockKind::Recv ? ProcState::BlockedRecv : ProcState::BlockedSend);
  trace(TraceKind::Block, port.qualified_name());
  if (run_.virtual_clock()) {
    run_.scheduler().block_on(id_, &ch);
  } else {
    kind == BlockKind::Recv ? ch.wait_readable() : ch.wait_writable();
  }
  if (run_.aborted()) throw RunAborted{};
  state_.store(ProcState::Running);
}

void ProcessControl::channel_changed(Channel& ch) {
  if (run_.virtual_clock()) run_.scheduler().channel_changed(&ch);
}

void ProcessControl::note_transfer() { run_.note_progress(); }

void ProcessControl::enqueue_command(RuntimeCommand cmd) {
  {
    std::lock_guard lk(mu_);
    if (stop_issued_ || state_.load() == ProcState::Done)
      throw Error(ErrorCode::ProcessStopped, "process '" + proc_.name() + "' is already stopped");
    commands_.push_back(cmd);
    if (cmd == RuntimeCommand::Stop) stop_issued_ = true;
  }
  cv_.notify_all();
}

bool ProcessControl::apply_runtime_commands() {
  bool paused = false;
  for (;;) {
    std::optional<RuntimeCommand> cmd = poll_command();
    if (!cmd) {
      if (!paused) return false;
      // Wait for Run or Stop off the clock.
      state_.store(ProcState::Paused);
      if (run_.virtual_clock()) run_.scheduler().external_begin(id_);
      {
        std::unique_lock lk(mu_);
        cv_.wait(lk, [&] { return run_.aborted() || !commands_.empty(); });
      }
      if (run_.virtual_clock()) run_.scheduler().external_end(id_);
      if (run_.aborted()) throw RunAborted{};
      continue;
    }
    switch (*cmd) {
      case RuntimeCommand::Stop: return true;
      case RuntimeCommand::Pause: paused = true; break;
      case RuntimeCommand::Run: paused = false; break;
    }
  }
}

void ProcessControl::wake() { cv_.notify_all(); }

std::string ProcessControl::describe() const {
  std::string blocked;
  {
    std::lock_guard lk(mu_);
    blocked = blocked_on_;
  }
  const std::string& name = proc_.name();
  switch (state_.load()) {
    case ProcState::BlockedRecv:
    case ProcState::BlockedSend: return name + " blocked in " + blocked;
    case ProcState::AtBarrier: return name + " waiting at barrier after step " + std::to_string(steps());
    case ProcState::Sleeping: return name + " sleeping";
    case ProcState::Paused: return name + " paused";
    case ProcState::Running: return name + " running step " + std::to_string(step_index_);
    case ProcState::Pending: return name + " not started";
    case ProcState::Done: return name + " terminated";
  }
  return name;
}

// ---------------------------------------------------------------------------
// RunState

RunState::RunState(ProcessGraph& graph, RunMode mode, RunLimits limits, std::shared_ptr<TraceRecorder> recorder)
    : graph_(graph), mode_(mode), limits_(limits), recorder_(std::move(recorder)) {
  for (ProcessId id = 0; id < graph.size(); ++id)
    controls_.push_back(std::make_unique<ProcessControl>(*this, graph.process(id)));
  if (limits_.clock == ClockKind::Virtual) scheduler_ = std::make_unique<VirtualScheduler>(graph.size(), aborted_);
}

void RunState::launch() {
  start_ = Clock::now();
  if (scheduler_) scheduler_->start();
  for (auto& c : controls_) {
    ProcessControl* ctl = c.get();
    if (mode_ == RunMode::Async) {
      workers_.emplace_back([this, ctl] { async_worker(*ctl); });
    } else {
      workers_.emplace_back([this, ctl] { sync_worker(*ctl); });
    }
  }
  if (mode_ == RunMode::SyncBarrier) coordinator_ = std::thread([this] { sync_coordinator(); });
  watchdog_ = std::thread([this] { watchdog(); });
}

void RunState::abort() {
  if (aborted_.exchange(true)) return;
  for (const auto& info : graph_.channels()) info.channel->abort();
  for (auto& c : controls_) c->wake();
  if (scheduler_) scheduler_->wake_all();
  {
    std::lock_guard lk(sync_mu_);
  }
  sync_cv_.notify_all();
}

void RunState::record_error(ProcessControl& c, const std::string& what) {
  std::lock_guard lk(report_mu_);
  errors_.push_back(c.process().name() + ": " + what);
}

void RunState::finish_process(ProcessControl& c) {
  for (auto& port : c.process().ports()) {
    if (!port->connected()) continue;
    Channel& ch = *port->channel_;
    if (port->direction() == PortDirection::Out) {
      ch.close_producer();
    } else {
      ch.close_consumer();
    }
    if (!aborted()) c.channel_changed(ch);
  }
  for (auto& var : c.process().variables()) var->mark_owner_stopped();
  c.set_state(ProcState::Done);
  c.trace(TraceKind::Command, "terminated");
  if (scheduler_) scheduler_->finish(c.id());
  {
    std::lock_guard lk(watchdog_mu_);
  }
  watchdog_cv_.notify_all();
}

void RunState::async_worker(ProcessControl& c) {
  Process& proc = c.process();
  try {
    if (scheduler_) scheduler_->acquire(c.id());
    c.set_state(ProcState::Running);
    for (;;) {
      if (aborted()) break;
      if (!proc.handles_commands() && c.apply_runtime_commands()) break;
      if (c.steps() >= limits_.max_steps) {
        step_limit_.store(true);
        break;
      }
      c.set_step_index(c.steps());
      c.set_state(ProcState::Running);
      const StepOutcome outcome = proc.step(c);
      c.count_step();
      note_progress();
      if (outcome == StepOutcome::Finished) break;
      if (scheduler_) scheduler_->advance_and_yield(c.id(), limits_.virtual_step_cost);
    }
  } catch (const RunAborted&) {
  } catch (const std::exception& e) {
    record_error(c, e.what());
  }
  finish_process(c);
}

void RunState::sync_worker(ProcessControl& c) {
  Process& proc = c.process();
  try {
    for (;;) {
      {
        std::unique_lock lk(sync_mu_);
        c.set_state(ProcState::AtBarrier);
        sync_cv_.wait(lk, [&] { return aborted() || shutdown_ || c.go; });
        if (aborted() || !c.go) break;
        c.go = false;
        c.set_step_index(current_step_);
      }
      bool finished = false;
      try {
        if (!proc.handles_commands() && c.apply_runtime_commands()) {
          finished = true;
        } else {
          c.set_state(ProcState::Running);
          finished = proc.step(c) == StepOutcome::Finished;
          c.count_step();
          note_progress();
        }
      } catch (const RunAborted&) {
        throw;
      } catch (const std::exception& e) {
        record_error(c, e.what());
        finished = true;
      }
      {
        std::lock_guard lk(sync_mu_);
        c.reported = true;
        c.finished = finished;
        ++reported_count_;
      }
      sync_cv_.notify_all();
      if (finished) break;
    }
  } catch (const RunAborted&) {
  }
  finish_process(c);
}

void RunState::sync_coordinator() {
  std::vector<ProcessControl*> active;
  for (auto& c : controls_) active.push_back(c.get());
  std::uint64_t step = 0;
  while (!active.empty() && !aborted()) {
    if (step >= limits_.max_steps) {
      step_limit_.store(true);
      break;
    }
    {
      std::lock_guard lk(sync_mu_);
      current_step_ = step;
      reported_count_ = 0;
      for (auto* c : active) {
        c->go = true;
        c->reported = false;
      }
    }
    sync_cv_.notify_all();
    {
      std::unique_lock lk(sync_mu_);
      sync_cv_.wait(lk, [&] { return aborted() || reported_count_ == active.size(); });
      if (aborted()) break;
      std::erase_if(active, [](ProcessControl* c) { return c->finished; });
    }
    ++step;
    barrier_steps_.store(step);
    note_progress();
    if (recorder_) recorder_->record(TraceEvent{wall_elapsed(), "runtime", TraceKind::Barrier, "step " + std::to_string(step - 1) + " complete"});
  }
  {
    std::lock_guard lk(sync_mu_);
    shutdown_ = true;
  }
  sync_cv_.notify_all();
}

void RunState::trigger_deadlock(const std::string& reason) {
  std::ostringstream diag;
  diag << reason;
  std::string sep = "; ";
  for (auto& c : controls_) {
    if (c->terminated()) continue;
    diag << sep << c->describe();
  }
  {
    std::lock_guard lk(report_mu_);
    deadlock_ = true;
    deadlock_diagnostic_ = diag.str();
  }
  if (recorder_) recorder_->record(TraceEvent{wall_elapsed(), "runtime", TraceKind::Deadlock, diag.str()});
  abort();
}

void RunState::watchdog() {
  const Duration period = std::clamp<Duration>(limits_.watchdog_timeout / 20, std::chrono::milliseconds(1),
                                               std::chrono::milliseconds(50));
  std::uint64_t last_progress = progress_.load();
  auto last_change = Clock::now();
  std::unique_lock lk(watchdog_mu_);
  while (!finished_.load() && !aborted()) {
    watchdog_cv_.wait_for(lk, period);
    if (finished_.load() || aborted()) break;
    if (scheduler_ && scheduler_->deadlocked()) {
      lk.unlock();
      trigger_deadlock("no runnable process on the virtual clock");
      return;
    }
    const std::uint64_t p = progress_.load();
    const auto now = Clock::now();
    bool any_paused = false;
    for (auto& c : controls_) any_paused = any_paused || c->state() == ProcState::Paused;
    if (p != last_progress || any_paused) {
      last_progress = p;
      last_change = now;
      continue;
    }
    if (now - last_change >= limits_.watchdog_timeout) {
      lk.unlock();
      trigger_deadlock("no global progress for " + std::to_string(to_ms(limits_.watchdog_timeout)) + " ms");
      return;
    }
  }
}

RunReport RunState::join() {
  for (auto& t : workers_) t.join();
  if (coordinator_.joinable()) coordinator_.join();
  end_ = Clock::now();
  {
    std::lock_guard lk(watchdog_mu_);
    finished_.store(true);
  }
  watchdog_cv_.notify_all();
  watchdog_.join();

  RunReport report;
  for (auto& c : controls_) {
    report.process_names.push_back(c->process().name());
    report.steps_executed[c->id()] = c->steps();
    report.probe_counts[c->id()] = c->probes();
  }
  std::lock_guard lk(report_mu_);
  report.deadlock_detected = deadlock_;
  report.deadlock_diagnostic = deadlock_diagnostic_;
  report.step_limit_reached = step_limit_.load();
  report.process_errors = errors_;
  report.wall_time = end_ - start_;
  report.virtual_time = scheduler_ ? scheduler_->max_time() : Duration{0};
  report.barrier_steps = barrier_steps_.load();
  return report;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Runtime

Runtime::Runtime(ProcessGraph& graph, RunMode mode, RunLimits limits, std::shared_ptr<TraceRecorder> recorder)
    : graph_(graph), mode_(mode), limits_(limits) {
  if (graph.size() == 0) throw Error(ErrorCode::ConfigError, "graph has no processes");
  limits_.validate(mode);
  if (graph.consumed_) throw Error(ErrorCode::ConfigError, "graph has already been run");
  graph.consumed_ = true;
  state_ = std::make_unique<detail::RunState>(graph, mode, limits_, std::move(recorder));
  for (ProcessId id = 0; id < graph.size(); ++id) graph.process(id).control_ = &state_->control(id);
}

Runtime::~Runtime() {
  if (started_ && !joined_) {
    state_->abort();
    state_->join();
  }
  for (ProcessId id = 0; id < graph_.size(); ++id) graph_.process(id).control_ = nullptr;
}

void Runtime::start() {
  if (started_) throw Error(ErrorCode::ConfigError, "runtime already started");
  started_ = true;
  state_->launch();
}

RunReport Runtime::wait() {
  if (!started_) start();
  if (joined_) throw Error(ErrorCode::ConfigError, "runtime already joined");
  joined_ = true;
  RunReport report = state_->join();
  for (ProcessId id = 0; id < graph_.size(); ++id) graph_.process(id).control_ = nullptr;
  return report;
}

void Runtime::issue_command(ProcessId target, RuntimeCommand cmd) {
  if (target >= graph_.size()) throw Error(ErrorCode::UnknownProcess, "no process with id " + std::to_string(target));
  state_->control(target).enqueue_command(cmd);
  if (auto* rec = state_->recorder())
    rec->record(TraceEvent{state_->wall_elapsed(), graph_.process(target).name(), TraceKind::Command,
                           "issued " + to_string(cmd)});
}

bool Runtime::running() const { return started_ && !joined_ && !state_->finished(); }

std::uint64_t Runtime::steps_of(ProcessId id) const {
  if (id >= graph_.size()) throw Error(ErrorCode::UnknownProcess, "no process with id " + std::to_string(id));
  return state_->control(id).steps();
}

RunReport run(ProcessGraph& graph, RunMode mode, RunLimits limits, std::shared_ptr<TraceRecorder> recorder) {
  Runtime rt(graph, mode, limits, std::move(recorder));
  rt.start();
  return rt.wait();
}

}  // namespace asyncopt::graph

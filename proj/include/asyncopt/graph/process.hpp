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
#include <cstddef>
#include <cstdint>
#include <deque>
#include <functional>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "asyncopt/graph/port.hpp"
#include "asyncopt/graph/sleep_policy.hpp"
#include "asyncopt/graph/token.hpp"
#include "asyncopt/graph/trace.hpp"

namespace asyncopt::graph {

using ProcessId = std::size_t;

namespace detail {
class ProcessControl;
}

enum class StepOutcome { Continue, Finished };

/// Internal variable of a process, readable from outside through a Ref port.
/// Reads and writes are whole-value atomic.
class Variable {
 public:
  struct Snapshot {
    Token value;
    bool owner_stopped = false;
    std::chrono::steady_clock::time_point written_at;
  };

  Variable(std::string name, Token initial);

  const std::string& name() const { return name_; }
  void write(Token value);
  Snapshot snapshot() const;
  void mark_owner_stopped();

 private:
  std::string name_;
  mutable std::mutex mu_;
  Token value_;
  bool owner_stopped_ = false;
  std::chrono::steady_clock::time_point written_at_;
};

/// What a step function sees of the runtime executing it.
class StepContext {
 public:
  virtual ~StepContext() = default;

  /// Non-blocking check of the management channel.
  virtual std::optional<RuntimeCommand> poll_command() = 0;
  /// Suspends the process; returns early if a command arrives.
  virtual void sleep(Duration d) = 0;
  /// Models d of busy computation (not interrupted by commands).
  virtual void work_for(Duration d) = 0;
  /// Time since the run started, on the run's clock.
  virtual Duration now() const = 0;
  virtual std::uint64_t step_index() const = 0;
  virtual void trace(TraceKind kind, std::string detail) = 0;
};

/// Drives a process by hand on the wall clock, outside any runtime.
class StandaloneContext final : public StepContext {
 public:
  explicit StandaloneContext(std::string process_name = "standalone",
                             std::shared_ptr<TraceRecorder> recorder = {});

  void push_command(RuntimeCommand cmd);
  void set_step_index(std::uint64_t i) { step_ = i; }

  std::optional<RuntimeCommand> poll_command() override;
  void sleep(Duration d) override;
  void work_for(Duration d) override;
  Duration now() const override;
  std::uint64_t step_index() const override { return step_; }
  void trace(TraceKind kind, std::string detail) override;

  Duration total_slept() const { return slept_; }

 private:
  std::string name_;
  std::shared_ptr<TraceRecorder> recorder_;
  std::deque<RuntimeCommand> commands_;
  std::chrono::steady_clock::time_point start_;
  std::uint64_t step_ = 0;
  Duration slept_{0};
};

/// A computational element with ports, variables and a step function.
class Process {
 public:
  explicit Process(std::string name);
  virtual ~Process();
  Process(const Process&) = delete;
  Process& operator=(const Process&) = delete;

  const std::string& name() const { return name_; }
  ProcessId id() const { return id_; }

  virtual StepOutcome step(StepContext& ctx) = 0;

  /// Processes that read their own management channel (via poll_command)
  /// return true; otherwise the runtime applies Stop/Pause/Run between steps.
  virtual bool handles_commands() const { return false; }

  Port& port(std::string_view name);
  Variable& variable(std::string_view name);
  const std::vector<std::unique_ptr<Port>>& ports() const { return ports_; }
  const std::vector<std::unique_ptr<Variable>>& variables() const { return variables_; }

  Port& add_in_port(std::string name);
  Port& add_out_port(std::string name);
  Variable& add_variable(std::string name, Token initial);

 private:
  friend class ProcessGraph;
  friend class Port;
  friend class Runtime;

  Port& add_port(std::string name, PortDirection dir);

  std::string name_;
  ProcessId id_ = 0;
  std::vector<std::unique_ptr<Port>> ports_;
  std::vector<std::unique_ptr<Variable>> variables_;
  detail::ProcessControl* control_ = nullptr;
};

/// Process whose step is a callable; used for tests and small adapters.
class FunctionProcess final : public Process {
 public:
  using StepFn = std::function<StepOutcome(FunctionProcess&, StepContext&)>;

  FunctionProcess(std::string name, StepFn fn, bool handles_commands = false)
      : Process(std::move(name)), fn_(std::move(fn)), handles_commands_(handles_commands) {}

  StepOutcome step(StepContext& ctx) override { return fn_(*this, ctx); }
  bool handles_commands() const override { return handles_commands_; }

 private:
  StepFn fn_;
  bool handles_commands_;
};

}  // namespace asyncopt::graph

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
#include <fstream>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

namespace asyncopt::graph {

enum class TraceKind { Send, Recv, Probe, Block, Sleep, Command, Barrier, Action, Evaluation, Deadlock };

std::string to_string(TraceKind kind);

struct TraceEvent {
  std::chrono::nanoseconds at{0};  // since run start, on the run's clock
  std::string process;
  TraceKind kind = TraceKind::Action;
  std::string detail;
};

/// Sink for runtime trace events. Implementations must accept concurrent
/// calls from every process context.
class TraceRecorder {
 public:
  virtual ~TraceRecorder() = default;
  virtual void record(TraceEvent event) = 0;
};

class MemoryRecorder final : public TraceRecorder {
 public:
  void record(TraceEvent event) override;
  std::vector<TraceEvent> events() const;
  std::size_t count(TraceKind kind) const;

 private:
  mutable std::mutex mu_;
  std::vector<TraceEvent> events_;
};

/// One JSON object per line: {"t_ms", "process", "kind", "detail"}.
class JsonlTraceWriter final : public TraceRecorder {
 public:
  explicit JsonlTraceWriter(const std::string& path);
  void record(TraceEvent event) override;

 private:
  std::mutex mu_;
  std::ofstream out_;
};

}  // namespace asyncopt::graph

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

#include "asyncopt/graph/trace.hpp"

#include <algorithm>
#include <nlohmann/json.hpp>

namespace asyncopt::graph {

std::string to_string(TraceKind kind) {
  switch (kind) {
    case TraceKind::Send: return "send";
    case TraceKind::Recv: return "recv";
    case TraceKind::Probe: return "probe";
    case TraceKind::Block: return "block";
    case TraceKind::Sleep: return "sleep";
    case TraceKind::Command: return "command";
    case TraceKind::Barrier: return "barrier";
    case TraceKind::Action: return "action";
    case TraceKind::Evaluation: return "evaluation";
    case TraceKind::Deadlock: return "deadlock";
  }
  return "?";
}

void MemoryRecorder::record(TraceEvent event) {
  std::lock_guard lk(mu_);
  events_.push_back(std::move(event));
}

std::vector<TraceEvent> MemoryRecorder::events() const {
  std::lock_guard lk(mu_);
  return events_;
}

std::size_t MemoryRecorder::count(TraceKind kind) const {
  std::lock_guard lk(mu_);
  return static_cast<std::size_t>(
      std::count_if(events_.begin(), events_.end(), [&](const TraceEvent& e) { return e.kind == kind; }));
}

JsonlTraceWriter::JsonlTraceWriter(const std::string& path) : out_(path) {}

void JsonlTraceWriter::record(TraceEvent event) {
  nlohmann::json j;
  j["t_ms"] = std::chrono::duration<double, std::milli>(event.at).count();
  j["process"] = event.process;
  j["kind"] = to_string(event.kind);
  j["detail"] = event.detail;
  std::lock_guard lk(mu_);
  out_ << j.dump() << '\n';
}

}  // namespace asyncopt::graph

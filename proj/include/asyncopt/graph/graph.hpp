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
#include <memory>
#include <string_view>
#include <utility>
#include <vector>

#include "asyncopt/graph/process.hpp"

namespace asyncopt::graph {

using ChannelId = std::size_t;

inline constexpr std::size_t kDefaultChannelCapacity = 64;

/// Read-only handle on one variable of a process.
class RefPort {
 public:
  RefPort(Process& target, Variable& var) : target_(&target), var_(&var) {}

  PortDirection direction() const { return PortDirection::Ref; }
  Process& target() const { return *target_; }
  Variable& variable() const { return *var_; }

 private:
  Process* target_;
  Variable* var_;
};

struct RefReading {
  Token value;
  bool target_stopped = false;
};

/// Never blocks; returns a value the target actually held.
RefReading read_ref(const RefPort& ref);

struct ChannelInfo {
  std::shared_ptr<detail::Channel> channel;
  Port* out = nullptr;
  Port* in = nullptr;
  std::size_t capacity = 0;
  std::size_t dims = 0;
};

/// Processes plus their channel wiring.
class ProcessGraph {
 public:
  ProcessGraph() = default;
  ProcessGraph(const ProcessGraph&) = delete;
  ProcessGraph& operator=(const ProcessGraph&) = delete;

  ProcessId add(std::unique_ptr<Process> process);

  template <class P, class... Args>
  P& emplace(Args&&... args) {
    auto owned = std::make_unique<P>(std::forward<Args>(args)...);
    P& ref = *owned;
    add(std::move(owned));
    return ref;
  }

  /// Links `out` to `in` with a bounded FIFO. `dims`, when nonzero, is the
  /// required length of ParamVector / ResultTuple::param tokens on the channel.
  ChannelId connect(Port& out, Port& in, std::size_t capacity = kDefaultChannelCapacity,
                    std::size_t dims = 0);

  RefPort ref(ProcessId target, std::string_view variable);

  std::size_t size() const { return processes_.size(); }
  Process& process(ProcessId id) const;
  ProcessId find(std::string_view name) const;
  const std::vector<ChannelInfo>& channels() const { return channels_; }

 private:
  friend class Runtime;

  std::vector<std::unique_ptr<Process>> processes_;
  std::vector<ChannelInfo> channels_;
  bool consumed_ = false;
};

}  // namespace asyncopt::graph

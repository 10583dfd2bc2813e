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
#include <string>

#include "asyncopt/graph/token.hpp"

namespace asyncopt::graph {

class Process;

namespace detail {
class Channel;
class RunState;
}

enum class PortDirection { In, Out, Ref };

std::string to_string(PortDirection dir);

struct ProbeResult {
  enum class State { Empty, Available };

  State state = State::Empty;
  std::size_t count = 0;

  bool available() const { return state == State::Available; }
  static ProbeResult empty() { return {}; }
  static ProbeResult of(std::size_t n) { return n == 0 ? empty() : ProbeResult{State::Available, n}; }
};

/// Endpoint of a single-producer single-consumer channel. Ports are owned by
/// their process and wired with ProcessGraph::connect. Inside a run, the
/// blocking operations cooperate with the runtime (deadlock watchdog, virtual
/// clock); outside a run they block on the channel directly.
class Port {
 public:
  Port(Process& owner, std::string name, PortDirection direction);
  Port(const Port&) = delete;
  Port& operator=(const Port&) = delete;

  const std::string& name() const { return name_; }
  /// "<process>.<port>"
  std::string qualified_name() const;
  PortDirection direction() const { return direction_; }
  Process& owner() const { return *owner_; }
  bool connected() const { return channel_ != nullptr; }
  std::size_t capacity() const;

  /// Enqueues `token`; blocks while the channel is full.
  /// Throws Disconnected when the consuming process has stopped.
  void send(Token token);

  /// Returns the oldest token; blocks while the channel is empty.
  /// Throws Disconnected when the producer stopped and nothing is left.
  Token recv();

  /// Never blocks.
  ProbeResult probe();

  /// True once the process on the other end of the channel has terminated.
  bool peer_stopped() const;

 private:
  friend class ProcessGraph;
  friend class detail::RunState;

  detail::Channel& channel_or_throw(PortDirection expected) const;

  Process* owner_;
  std::string name_;
  PortDirection direction_;
  std::shared_ptr<detail::Channel> channel_;
};

}  // namespace asyncopt::graph

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

#include "asyncopt/graph/graph.hpp"

#include "asyncopt/error.hpp"
#include "channel.hpp"

namespace asyncopt::graph {

ProcessId ProcessGraph::add(std::unique_ptr<Process> process) {
  if (!process) throw Error(ErrorCode::ConfigError, "null process");
  if (consumed_) throw Error(ErrorCode::ConfigError, "cannot add processes after the graph has run");
  for (const auto& p : processes_) {
    if (p->name() == process->name())
      throw Error(ErrorCode::ConfigError, "duplicate process name '" + process->name() + "'");
  }
  process->id_ = processes_.size();
  processes_.push_back(std::move(process));
  return processes_.back()->id_;
}

ChannelId ProcessGraph::connect(Port& out, Port& in, std::size_t capacity, std::size_t dims) {
  if (out.direction() != PortDirection::Out || in.direction() != PortDirection::In)
    throw Error(ErrorCode::DirectionMismatch, "connect needs Out -> In, got " + to_string(out.direction()) + " -> " +
                                                  to_string(in.direction()));
  if (out.connected()) throw Error(ErrorCode::PortAlreadyConnected, out.qualified_name());
  if (in.connected()) throw Error(ErrorCode::PortAlreadyConnected, in.qualified_name());
  if (capacity == 0) throw Error(ErrorCode::ConfigError, "channel capacity must be positive");
  auto ch = std::make_shared<detail::Channel>(capacity, dims);
  out.channel_ = ch;
  in.channel_ = ch;
  channels_.push_back(ChannelInfo{ch, &out, &in, capacity, dims});
  return channels_.size() - 1;
}

RefPort ProcessGraph::ref(ProcessId target, std::string_view variable) {
  return RefPort(process(target), process(target).variable(variable));
}

Process& ProcessGraph::process(ProcessId id) const {
  if (id >= processes_.size()) throw Error(ErrorCode::UnknownProcess, "no process with id " + std::to_string(id));
  return *processes_[id];
}

ProcessId ProcessGraph::find(std::string_view name) const {
  for (const auto& p : processes_) {
    if (p->name() == name) return p->id();
  }
  throw Error(ErrorCode::UnknownProcess, "no process named '" + std::string(name) + "'");
}

RefReading read_ref(const RefPort& ref) {
  Variable::Snapshot snap = ref.variable().snapshot();
  return RefReading{std::move(snap.value), snap.owner_stopped};
}

}  // namespace asyncopt::graph

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

#include "asyncopt/graph/process.hpp"

#include <thread>

#include "asyncopt/error.hpp"

namespace asyncopt::graph {

Variable::Variable(std::string name, Token initial)
    : name_(std::move(name)), value_(std::move(initial)), written_at_(std::chrono::steady_clock::now()) {}

void Variable::write(Token value) {
  std::lock_guard lk(mu_);
  value_ = std::move(value);
  written_at_ = std::chrono::steady_clock::now();
}

Variable::Snapshot Variable::snapshot() const {
  std::lock_guard lk(mu_);
  return Snapshot{value_, owner_stopped_, written_at_};
}

void Variable::mark_owner_stopped() {
  std::lock_guard lk(mu_);
  owner_stopped_ = true;
}

Process::Process(std::string name) : name_(std::move(name)) {}

Process::~Process() = default;

Port& Process::add_port(std::string name, PortDirection dir) {
  for (const auto& p : ports_) {
    if (p->name() == name) throw Error(ErrorCode::ConfigError, "duplicate port '" + name + "' on " + name_);
  }
  ports_.push_back(std::make_unique<Port>(*this, std::move(name), dir));
  return *ports_.back();
}

Port& Process::add_in_port(std::string name) { return add_port(std::move(name), PortDirection::In); }

Port& Process::add_out_port(std::string name) { return add_port(std::move(name), PortDirection::Out); }

Variable& Process::add_variable(std::string name, Token initial) {
  for (const auto& v : variables_) {
    if (v->name() == name) throw Error(ErrorCode::ConfigError, "duplicate variable '" + name + "' on " + name_);
  }
  variables_.push_back(std::make_unique<Variable>(std::move(name), std::move(initial)));
  return *variables_.back();
}

Port& Process::port(std::string_view name) {
  for (auto& p : ports_) {
    if (p->name() == name) return *p;
  }
  throw Error(ErrorCode::UnknownPort, name_ + " has no port '" + std::string(name) + "'");
}

Variable& Process::variable(std::string_view name) {
  for (auto& v : variables_) {
    if (v->name() == name) return *v;
  }
  throw Error(ErrorCode::UnknownVariable, name_ + " has no variable '" + std::string(name) + "'");
}

StandaloneContext::StandaloneContext(std::string process_name, std::shared_ptr<TraceRecorder> recorder)
    : name_(std::move(process_name)), recorder_(std::move(recorder)), start_(std::chrono::steady_clock::now()) {}

void StandaloneContext::push_command(RuntimeCommand cmd) { commands_.push_back(cmd); }

std::optional<RuntimeCommand> StandaloneContext::poll_command() {
  if (commands_.empty()) return std::nullopt;
  RuntimeCommand cmd = commands_.front();
  commands_.pop_front();
  return cmd;
}

void StandaloneContext::sleep(Duration d) {
  slept_ += d;
  if (commands_.empty()) std::this_thread::sleep_for(d);
}

void StandaloneContext::work_for(Duration d) { std::this_thread::sleep_for(d); }

Duration StandaloneContext::now() const { return std::chrono::steady_clock::now() - start_; }

void StandaloneContext::trace(TraceKind kind, std::string detail) {
  if (recorder_) recorder_->record(TraceEvent{now(), name_, kind, std::move(detail)});
}

}  // namespace asyncopt::graph

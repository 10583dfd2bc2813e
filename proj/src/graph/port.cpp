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

#include "asyncopt/graph/port.hpp"

#include "asyncopt/error.hpp"
#include "asyncopt/graph/process.hpp"
#include "channel.hpp"
#include "control.hpp"

namespace asyncopt::graph {

namespace {

void check_dims(const detail::Channel& ch, const Token& token, const std::string& port) {
  if (ch.dims() == 0) return;
  std::size_t n = ch.dims();
  if (const auto* p = token.get_if<ParamVector>()) n = p->values.size();
  if (const auto* r = token.get_if<ResultTuple>()) n = r->param.size();
  if (n != ch.dims())
    throw Error(ErrorCode::DimensionMismatch, port + " carries " + std::to_string(ch.dims()) +
                                                  "-dimensional vectors, got " + std::to_string(n));
}

}  // namespace

std::string to_string(PortDirection dir) {
  switch (dir) {
    case PortDirection::In: return "In";
    case PortDirection::Out: return "Out";
    case PortDirection::Ref: return "Ref";
  }
  return "?";
}

Port::Port(Process& owner, std::string name, PortDirection direction)
    : owner_(&owner), name_(std::move(name)), direction_(direction) {}

std::string Port::qualified_name() const { return owner_->name() + "." + name_; }

std::size_t Port::capacity() const { return channel_ ? channel_->capacity() : 0; }

detail::Channel& Port::channel_or_throw(PortDirection expected) const {
  if (direction_ != expected)
    throw Error(ErrorCode::DirectionMismatch,
                qualified_name() + " is an " + to_string(direction_) + " port, expected " + to_string(expected));
  if (!channel_) throw Error(ErrorCode::NotConnected, qualified_name() + " is not connected");
  return *channel_;
}

void Port::send(Token token) {
  detail::Channel& ch = channel_or_throw(PortDirection::Out);
  check_dims(ch, token, qualified_name());
  detail::ProcessControl* ctl = owner_->control_;
  const std::string what = ctl != nullptr ? describe(token) : std::string{};
  for (;;) {
    switch (ch.try_push(token)) {
      case detail::Channel::Status::Ok:
        if (ctl != nullptr) {
          ctl->channel_changed(ch);
          ctl->note_transfer();
          ctl->trace(TraceKind::Send, qualified_name() + " " + what);
        }
        return;
      case detail::Channel::Status::Closed:
        throw Error(ErrorCode::Disconnected, qualified_name() + ": consumer has stopped");
      case detail::Channel::Status::Aborted:
        throw detail::RunAborted{};
      case detail::Channel::Status::WouldBlock:
        if (ctl != nullptr) {
          ctl->wait_channel(*this, ch, detail::BlockKind::Send);
        } else {
          ch.wait_writable();
        }
        break;
    }
  }
}

Token Port::recv() {
  detail::Channel& ch = channel_or_throw(PortDirection::In);
  detail::ProcessControl* ctl = owner_->control_;
  std::optional<Token> out;
  for (;;) {
    switch (ch.try_pop(out)) {
      case detail::Channel::Status::Ok:
        if (ctl != nullptr) {
          ctl->channel_changed(ch);
          ctl->note_transfer();
          ctl->trace(TraceKind::Recv, qualified_name() + " " + describe(*out));
        }
        return std::move(*out);
      case detail::Channel::Status::Closed:
        throw Error(ErrorCode::Disconnected, qualified_name() + ": producer has stopped");
      case detail::Channel::Status::Aborted:
        throw detail::RunAborted{};
      case detail::Channel::Status::WouldBlock:
        if (ctl != nullptr) {
          ctl->wait_channel(*this, ch, detail::BlockKind::Recv);
        } else {
          ch.wait_readable();
        }
        break;
    }
  }
}

ProbeResult Port::probe() {
  detail::Channel& ch = channel_or_throw(PortDirection::In);
  const ProbeResult result = ProbeResult::of(ch.size());
  if (detail::ProcessControl* ctl = owner_->control_) {
    ctl->note_probe();
    ctl->trace(TraceKind::Probe, qualified_name() + (result.available()
                                                         ? " available(" + std::to_string(result.count) + ")"
                                                         : std::string(" empty")));
  }
  return result;
}

bool Port::peer_stopped() const {
  if (!channel_) return false;
  return direction_ == PortDirection::In ? channel_->producer_closed() : channel_->consumer_closed();
}

}  // namespace asyncopt::graph

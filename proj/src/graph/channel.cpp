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

#include "channel.hpp"

namespace asyncopt::graph::detail {

Channel::Status Channel::try_push(Token& token) {
  {
    std::lock_guard lk(mu_);
    if (aborted_) return Status::Aborted;
    if (consumer_closed_) return Status::Closed;
    if (queue_.size() >= capacity_) return Status::WouldBlock;
    queue_.push_back(std::move(token));
  }
  cv_.notify_all();
  return Status::Ok;
}

Channel::Status Channel::try_pop(std::optional<Token>& out) {
  {
    std::lock_guard lk(mu_);
    if (aborted_) return Status::Aborted;
    if (queue_.empty()) return producer_closed_ ? Status::Closed : Status::WouldBlock;
    out.emplace(std::move(queue_.front()));
    queue_.pop_front();
  }
  cv_.notify_all();
  return Status::Ok;
}

std::size_t Channel::size() const {
  std::lock_guard lk(mu_);
  return queue_.size();
}

void Channel::close_producer() {
  {
    std::lock_guard lk(mu_);
    producer_closed_ = true;
  }
  cv_.notify_all();
}

void Channel::close_consumer() {
  {
    std::lock_guard lk(mu_);
    consumer_closed_ = true;
  }
  cv_.notify_all();
}

bool Channel::producer_closed() const {
  std::lock_guard lk(mu_);
  return producer_closed_;
}

bool Channel::consumer_closed() const {
  std::lock_guard lk(mu_);
  return consumer_closed_;
}

void Channel::abort() {
  {
    std::lock_guard lk(mu_);
    aborted_ = true;
  }
  cv_.notify_all();
}

bool Channel::aborted() const {
  std::lock_guard lk(mu_);
  return aborted_;
}

void Channel::wait_readable() {
  std::unique_lock lk(mu_);
  cv_.wait(lk, [&] { return aborted_ || !queue_.empty() || producer_closed_; });
}

void Channel::wait_writable() {
  std::unique_lock lk(mu_);
  cv_.wait(lk, [&] { return aborted_ || queue_.size() < capacity_ || consumer_closed_; });
}

}  // namespace asyncopt::graph::detail

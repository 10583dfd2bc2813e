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

#include <algorithm>

#include "control.hpp"

namespace asyncopt::graph::detail {

VirtualScheduler::VirtualScheduler(std::size_t n, const std::atomic<bool>& aborted)
    : aborted_(aborted), local_(n, Duration{0}), waiting_on_(n, nullptr), done_(n, 0), external_(n, 0) {}

void VirtualScheduler::enqueue_locked(ProcessId id, Duration at) { ready_.insert(Ready{at, seq_++, id}); }

void VirtualScheduler::dispatch_locked() {
  running_.reset();
  if (!ready_.empty()) {
    const Ready next = *ready_.begin();
    ready_.erase(ready_.begin());
    local_[next.id] = std::max(local_[next.id], next.at);
    now_ = std::max(now_, local_[next.id]);
    running_ = next.id;
  } else {
    bool any_external = false;
    bool any_live = false;
    for (std::size_t i = 0; i < done_.size(); ++i) {
      any_external = any_external || external_[i] != 0;
      any_live = any_live || done_[i] == 0;
    }
    // Everyone left is waiting on a channel nobody will touch.
    if (any_live && !any_external) deadlock_ = true;
  }
  cv_.notify_all();
}

void VirtualScheduler::wait_turn_locked(std::unique_lock<std::mutex>& lk, ProcessId id) {
  cv_.wait(lk, [&] { return aborted_.load() || running_ == id; });
  if (running_ != id) throw RunAborted{};
}

void VirtualScheduler::start() {
  std::lock_guard lk(mu_);
  for (ProcessId id = 0; id < local_.size(); ++id) enqueue_locked(id, Duration{0});
  dispatch_locked();
}

void VirtualScheduler::acquire(ProcessId id) {
  std::unique_lock lk(mu_);
  wait_turn_locked(lk, id);
}

void VirtualScheduler::advance_and_yield(ProcessId id, Duration d) {
  std::unique_lock lk(mu_);
  if (aborted_.load()) throw RunAborted{};
  local_[id] += d;
  enqueue_locked(id, local_[id]);
  dispatch_locked();
  wait_turn_locked(lk, id);
}

void VirtualScheduler::block_on(ProcessId id, const Channel* ch) {
  std::unique_lock lk(mu_);
  if (aborted_.load()) throw RunAborted{};
  waiting_on_[id] = ch;
  dispatch_locked();
  wait_turn_locked(lk, id);
}

void VirtualScheduler::channel_changed(const Channel* ch) {
  std::lock_guard lk(mu_);
  const Duration at = running_ ? local_[*running_] : now_;
  for (ProcessId p = 0; p < waiting_on_.size(); ++p) {
    if (waiting_on_[p] == ch) {
      waiting_on_[p] = nullptr;
      enqueue_locked(p, std::max(local_[p], at));
    }
  }
}

void VirtualScheduler::external_begin(ProcessId id) {
  std::lock_guard lk(mu_);
  external_[id] = 1;
  if (running_ == id) dispatch_locked();
}

void VirtualScheduler::external_end(ProcessId id) {
  std::unique_lock lk(mu_);
  external_[id] = 0;
  enqueue_locked(id, std::max(local_[id], now_));
  if (!running_) dispatch_locked();
  wait_turn_locked(lk, id);
}

void VirtualScheduler::finish(ProcessId id) {
  std::lock_guard lk(mu_);
  done_[id] = 1;
  waiting_on_[id] = nullptr;
  external_[id] = 0;
  if (running_ == id) dispatch_locked();
}

void VirtualScheduler::wake_all() {
  std::lock_guard lk(mu_);
  cv_.notify_all();
}

Duration VirtualScheduler::local_time(ProcessId id) const {
  std::lock_guard lk(mu_);
  return local_[id];
}

Duration VirtualScheduler::max_time() const {
  std::lock_guard lk(mu_);
  return *std::max_element(local_.begin(), local_.end());
}

bool VirtualScheduler::deadlocked() const {
  std::lock_guard lk(mu_);
  return deadlock_;
}

}  // namespace asyncopt::graph::detail

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

#include <condition_variable>
#include <cstddef>
#include <deque>
#include <mutex>
#include <optional>

#include "asyncopt/graph/token.hpp"

namespace asyncopt::graph::detail {

/// Bounded FIFO between exactly one producer and one consumer.
class Channel {
 public:
  enum class Status { Ok, WouldBlock, Closed, Aborted };

  Channel(std::size_t capacity, std::size_t dims) : capacity_(capacity), dims_(dims) {}

  std::size_t capacity() const { return capacity_; }
  std::size_t dims() const { return dims_; }

  /// Moves from `token` only on Ok. Closed means the consumer is gone.
  Status try_push(Token& token);
  /// Closed means the producer is gone and the queue is drained.
  Status try_pop(std::optional<Token>& out);
  std::size_t size() const;

  void close_producer();
  void close_consumer();
  bool producer_closed() const;
  bool consumer_closed() const;

  void abort();
  bool aborted() const;

  // Wall-clock waits used when no virtual scheduler is in charge. They return
  // as soon as the pending operation could make progress (or fail).
  void wait_readable();
  void wait_writable();

 private:
  const std::size_t capacity_;
  const std::size_t dims_;
  mutable std::mutex mu_;
  std::condition_variable cv_;
  std::deque<Token> queue_;
  bool producer_closed_ = false;
  bool consumer_closed_ = false;
  bool aborted_ = false;
};

}  // namespace asyncopt::graph::detail

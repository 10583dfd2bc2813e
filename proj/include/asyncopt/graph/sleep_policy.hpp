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
#include <cstdint>

namespace asyncopt::graph {

using Duration = std::chrono::nanoseconds;

/// Delay before re-probing an empty port:
/// delay(attempt) = min(base_delay * factor^attempt, max_delay).
struct SleepPolicy {
  Duration base_delay = std::chrono::milliseconds(10);
  double factor = 1.0;
  Duration max_delay = std::chrono::milliseconds(10);

  Duration delay(std::uint64_t attempt) const;
  void validate() const;  // throws ConfigError
};

}  // namespace asyncopt::graph

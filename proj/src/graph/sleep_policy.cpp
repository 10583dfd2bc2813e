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

#include "asyncopt/graph/sleep_policy.hpp"

#include <algorithm>
#include <cmath>

#include "asyncopt/error.hpp"

namespace asyncopt::graph {

Duration SleepPolicy::delay(std::uint64_t attempt) const {
  if (factor == 1.0) return std::min(base_delay, max_delay);
  const double scaled = static_cast<double>(base_delay.count()) * std::pow(factor, static_cast<double>(attempt));
  if (!std::isfinite(scaled) || scaled >= static_cast<double>(max_delay.count())) return max_delay;
  return std::min(Duration(static_cast<Duration::rep>(scaled)), max_delay);
}

void SleepPolicy::validate() const {
  if (base_delay < Duration::zero()) throw Error(ErrorCode::ConfigError, "sleep base_delay must be nonnegative");
  if (!(factor >= 1.0)) throw Error(ErrorCode::ConfigError, "sleep factor must be >= 1");
  if (max_delay < base_delay) throw Error(ErrorCode::ConfigError, "sleep max_delay must be >= base_delay");
}

}  // namespace asyncopt::graph

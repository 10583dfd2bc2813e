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
#include <span>
#include <vector>

namespace asyncopt {

/// Suggest/update interface any search algorithm exposes to the optimizer
/// processes. Implementations are single-threaded; the owning process is the
/// only caller.
class SearchAlgorithm {
 public:
  virtual ~SearchAlgorithm() = default;

  virtual std::size_t dims() const = 0;
  virtual std::vector<double> suggest() = 0;
  virtual void update(std::span<const double> x, double y) = 0;
};

}  // namespace asyncopt

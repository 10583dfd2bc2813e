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

#include <string>
#include <variant>
#include <vector>

namespace asyncopt::graph {

enum class RuntimeCommand { Run, Pause, Stop };

std::string to_string(RuntimeCommand cmd);

/// A candidate parameter vector X'.
struct ParamVector {
  std::vector<double> values;

  bool operator==(const ParamVector&) const = default;
};

/// An evaluated candidate (X, Y).
struct ResultTuple {
  std::vector<double> param;
  double score = 0.0;

  bool operator==(const ResultTuple&) const = default;
};

struct Scalar {
  double value = 0.0;

  bool operator==(const Scalar&) const = default;
};

struct Done {
  bool operator==(const Done&) const = default;
};

/// Message carried by channels and held by reference-port variables.
struct Token {
  using Payload = std::variant<ParamVector, ResultTuple, RuntimeCommand, Scalar, Done>;

  Payload payload;

  Token() : payload(Done{}) {}
  template <class T>
    requires std::is_constructible_v<Payload, T&&>
  Token(T&& value) : payload(std::forward<T>(value)) {}  // NOLINT(google-explicit-constructor)

  template <class T>
  bool holds() const {
    return std::holds_alternative<T>(payload);
  }
  template <class T>
  const T& as() const {
    return std::get<T>(payload);
  }
  template <class T>
  const T* get_if() const {
    return std::get_if<T>(&payload);
  }

  bool operator==(const Token&) const = default;
};

/// Boolean flags travel as Scalar 0/1.
inline Token flag_token(bool value) { return Scalar{value ? 1.0 : 0.0}; }
inline bool is_set(const Token& t) {
  const auto* s = t.get_if<Scalar>();
  return s != nullptr && s->value != 0.0;
}

std::string describe(const Token& t);

}  // namespace asyncopt::graph

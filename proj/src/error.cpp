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

#include "asyncopt/error.hpp"

namespace asyncopt {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::PortAlreadyConnected: return "PortAlreadyConnected";
    case ErrorCode::DirectionMismatch: return "DirectionMismatch";
    case ErrorCode::NotConnected: return "NotConnected";
    case ErrorCode::Disconnected: return "Disconnected";
    case ErrorCode::UnknownProcess: return "UnknownProcess";
    case ErrorCode::UnknownPort: return "UnknownPort";
    case ErrorCode::UnknownVariable: return "UnknownVariable";
    case ErrorCode::ProcessStopped: return "ProcessStopped";
    case ErrorCode::ConfigError: return "ConfigError";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::NotPositiveDefinite: return "NotPositiveDefinite";
    case ErrorCode::OutOfBounds: return "OutOfBounds";
    case ErrorCode::EmptyGraph: return "EmptyGraph";
    case ErrorCode::MalformedRequest: return "MalformedRequest";
  }
  return "Unknown";
}

}  // namespace asyncopt

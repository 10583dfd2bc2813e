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

#include "asyncopt/graph/token.hpp"

#include <sstream>

namespace asyncopt::graph {

std::string to_string(RuntimeCommand cmd) {
  switch (cmd) {
    case RuntimeCommand::Run: return "Run";
    case RuntimeCommand::Pause: return "Pause";
    case RuntimeCommand::Stop: return "Stop";
  }
  return "?";
}

namespace {

void put_vector(std::ostream& os, const std::vector<double>& v) {
  os << '(';
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? ", " : "") << v[i];
  os << ')';
}

}  // namespace

std::string describe(const Token& t) {
  std::ostringstream os;
  os.precision(6);
  if (const auto* p = t.get_if<ParamVector>()) {
    os << "ParamVector";
    put_vector(os, p->values);
  } else if (const auto* r = t.get_if<ResultTuple>()) {
    os << "ResultTuple";
    put_vector(os, r->param);
    os << " -> " << r->score;
  } else if (const auto* c = t.get_if<RuntimeCommand>()) {
    os << "Command(" << to_string(*c) << ')';
  } else if (const auto* s = t.get_if<Scalar>()) {
    os << "Scalar(" << s->value << ')';
  } else {
    os << "Done";
  }
  return os.str();
}

}  // namespace asyncopt::graph

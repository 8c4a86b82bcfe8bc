// Copyright 2026 The cavgate Authors
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

#include "cavgate/errors.hpp"

namespace cavgate {

const char* to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::Truncation: return "truncation";
    case ErrorKind::UndefinedFidelity: return "undefined fidelity";
    case ErrorKind::DivisionByZero: return "division by zero";
    case ErrorKind::Range: return "range";
    case ErrorKind::UndefinedAngle: return "undefined angle";
    case ErrorKind::DegenerateInput: return "degenerate input";
    case ErrorKind::Precondition: return "precondition";
    case ErrorKind::OpenPath: return "open path";
    case ErrorKind::Diverged: return "integration diverged";
    case ErrorKind::UndefinedPhase: return "undefined phase";
    case ErrorKind::Config: return "config";
    case ErrorKind::UnknownFigure: return "unknown figure";
    case ErrorKind::Io: return "io";
  }
  return "unknown";
}

}  // namespace cavgate

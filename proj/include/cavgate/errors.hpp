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

#pragma once

#include <stdexcept>
#include <string>

namespace cavgate {

enum class ErrorKind {
  Truncation,
  UndefinedFidelity,
  DivisionByZero,
  Range,
  UndefinedAngle,
  DegenerateInput,
  Precondition,
  OpenPath,
  Diverged,
  UndefinedPhase,
  Config,
  UnknownFigure,
  Io,
};

const char* to_string(ErrorKind kind) noexcept;

/// Every failure raised by the library carries one of the kinds above so that
/// the C layer can map it onto a status code without string matching.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

  /// Configuration-type failures (bad input) versus numerical failures.
  bool is_config_error() const noexcept {
    return kind_ == ErrorKind::Config || kind_ == ErrorKind::UnknownFigure ||
           kind_ == ErrorKind::Io;
  }

 private:
  ErrorKind kind_;
};

}  // namespace cavgate

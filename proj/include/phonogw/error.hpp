// Copyright 2026 The phonogw Authors
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
#include <string_view>

namespace phonogw {

enum class ErrorKind {
  InvalidArgument,
  NumericFailure,
  RegimeViolation,
  ConvergenceFailure,
  CalibrationFailure,
  UndefinedBound,
  IncreaseJmax,
  Parse,
};

constexpr std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidArgument: return "invalid-argument";
    case ErrorKind::NumericFailure: return "numeric-failure";
    case ErrorKind::RegimeViolation: return "regime-violation";
    case ErrorKind::ConvergenceFailure: return "convergence-failure";
    case ErrorKind::CalibrationFailure: return "calibration-failure";
    case ErrorKind::UndefinedBound: return "undefined-bound";
    case ErrorKind::IncreaseJmax: return "increase-j_max";
    case ErrorKind::Parse: return "parse-error";
  }
  return "unknown";
}

/// Every failure raised by the library carries one of the kinds above so the
/// CLI can map it to an exit code.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what),
        kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) {
  throw Error(kind, what);
}

inline void require(bool condition, ErrorKind kind, const std::string& what) {
  if (!condition) fail(kind, what);
}

}  // namespace phonogw

/*
 Copyright 2026 The refmrac Authors

 Licensed under the Apache License, Version 2.0 (the "License");
 you may not use this file except in compliance with the License.
 You may obtain a copy of the License at

     http://www.apache.org/licenses/LICENSE-2.0

 Unless required by applicable law or agreed to in writing, software
 distributed under the License is distributed on an "AS IS" BASIS,
 WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 See the License for the specific language governing permissions and
 limitations under the License.
*/

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace mrac {

enum class ErrorCode {
  NoRelativeDegree,
  DimensionMismatch,
  UncontrollablePair,
  UnobservablePair,
  RelativeDegreeViolation,
  NotHurwitz,
  SingularMatchingSystem,
  SingularKp,
  GainBoundViolation,
  DomainMismatch,
  SingularityGuard,
  ParseError,
  ValidationError,
  IoError,
};

std::string_view to_string(ErrorCode code);

/**
 * @brief Error raised by every fallible operation in the library.
 *
 * `field()` names the offending scenario field or argument when one applies.
 */
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message, std::string field = {})
      : std::runtime_error(std::string(to_string(code)) + ": " + message),
        code_(code),
        field_(std::move(field)) {}

  ErrorCode code() const noexcept { return code_; }
  const std::string& field() const noexcept { return field_; }

 private:
  ErrorCode code_;
  std::string field_;
};

inline std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::NoRelativeDegree: return "NoRelativeDegree";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::UncontrollablePair: return "UncontrollablePair";
    case ErrorCode::UnobservablePair: return "UnobservablePair";
    case ErrorCode::RelativeDegreeViolation: return "RelativeDegreeViolation";
    case ErrorCode::NotHurwitz: return "NotHurwitz";
    case ErrorCode::SingularMatchingSystem: return "SingularMatchingSystem";
    case ErrorCode::SingularKp: return "SingularKp";
    case ErrorCode::GainBoundViolation: return "GainBoundViolation";
    case ErrorCode::DomainMismatch: return "DomainMismatch";
    case ErrorCode::SingularityGuard: return "SingularityGuard";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::ValidationError: return "ValidationError";
    case ErrorCode::IoError: return "IoError";
  }
  return "Unknown";
}

}  // namespace mrac

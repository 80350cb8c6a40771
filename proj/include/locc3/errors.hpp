// Copyright 2026 The locc3 Authors
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

namespace locc3 {

enum class ErrorCode {
    InvalidInput,
    NothingTraced,
    InconsistentPhase,
    DegenerateFamily,
    UnsupportedClassification,
    WrongClass,
    InvalidTarget,
    Infeasible,
    MonotonicityViolation,
    DegenerateStep,
};

inline const char* to_string(ErrorCode code) {
    switch (code) {
    case ErrorCode::InvalidInput: return "invalid-input";
    case ErrorCode::NothingTraced: return "nothing-traced";
    case ErrorCode::InconsistentPhase: return "inconsistent-phase";
    case ErrorCode::DegenerateFamily: return "degenerate-family";
    case ErrorCode::UnsupportedClassification: return "unsupported-classification";
    case ErrorCode::WrongClass: return "wrong-class";
    case ErrorCode::InvalidTarget: return "invalid-target";
    case ErrorCode::Infeasible: return "infeasible";
    case ErrorCode::MonotonicityViolation: return "monotonicity-violation";
    case ErrorCode::DegenerateStep: return "degenerate-step";
    }
    return "unknown";
}

/// Single exception type for the library; `code()` distinguishes the failure.
class Error : public std::runtime_error {
  public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(what), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

    /// True for failures that mean "the requested transformation does not
    /// exist", as opposed to malformed input.
    bool is_infeasibility() const noexcept {
        return code_ == ErrorCode::Infeasible || code_ == ErrorCode::MonotonicityViolation;
    }

  private:
    ErrorCode code_;
};

} // namespace locc3

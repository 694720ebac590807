// Copyright 2026 The twotime Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
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

namespace twotime {

enum class ErrorCode {
    kShapeMismatch,
    kDegenerateInput,
    kInvalidInput,
    kNotNormalized,
    kIncompleteMeasurement,
    kMalformedData,
    kSchemaViolation,
    kVersionMismatch,
    kUsage,
    kIo,
    // Domain errors: the inputs are well formed but the quantity is undefined.
    kPostSelectionImpossible,
    kUndefinedWeakValue,
    kAllDiscarded,
    kNoEquivalentState,
};

inline std::string_view error_code_name(ErrorCode code) {
    switch (code) {
        case ErrorCode::kShapeMismatch: return "shape_mismatch";
        case ErrorCode::kDegenerateInput: return "degenerate_input";
        case ErrorCode::kInvalidInput: return "invalid_input";
        case ErrorCode::kNotNormalized: return "not_normalized";
        case ErrorCode::kIncompleteMeasurement: return "incomplete_measurement";
        case ErrorCode::kMalformedData: return "malformed_data";
        case ErrorCode::kSchemaViolation: return "schema_violation";
        case ErrorCode::kVersionMismatch: return "version_mismatch";
        case ErrorCode::kUsage: return "usage";
        case ErrorCode::kIo: return "io_error";
        case ErrorCode::kPostSelectionImpossible: return "post_selection_impossible";
        case ErrorCode::kUndefinedWeakValue: return "undefined_weak_value";
        case ErrorCode::kAllDiscarded: return "all_discarded";
        case ErrorCode::kNoEquivalentState: return "no_equivalent_state";
    }
    return "unknown";
}

/// True for errors raised on valid inputs whose requested quantity does not exist
/// (conditioning on a null event, vanishing weak-value denominators).
inline bool is_domain_error(ErrorCode code) {
    return code == ErrorCode::kPostSelectionImpossible || code == ErrorCode::kUndefinedWeakValue ||
           code == ErrorCode::kAllDiscarded || code == ErrorCode::kNoEquivalentState;
}

class Error : public std::runtime_error {
   public:
    Error(ErrorCode code, const std::string& message) : std::runtime_error(message), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

   private:
    ErrorCode code_;
};

}  // namespace twotime

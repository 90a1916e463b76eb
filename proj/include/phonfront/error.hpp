// Copyright (c) 2026 The phonfront Authors.
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

#ifndef PHONFRONT_ERROR_HPP_
#define PHONFRONT_ERROR_HPP_

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace phonfront {

enum class ErrorCode {
  kConstraintViolation,
  kLength,
  kSchema,
  kInvariant,
  kUnknownSymbol,
  kUnknownToken,
  kMalformedStress,
  kIllegalSyllable,
  kAmbiguousSegmentation,
  kDecompositionGap,
  kShapeMismatch,
  kMagicMismatch,
  kTruncated,
  kVersionMismatch,
  kConfig,
  kIo,
};

inline std::string_view error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::kConstraintViolation: return "constraint-violation";
    case ErrorCode::kLength: return "length";
    case ErrorCode::kSchema: return "schema";
    case ErrorCode::kInvariant: return "invariant-violation";
    case ErrorCode::kUnknownSymbol: return "unknown-symbol";
    case ErrorCode::kUnknownToken: return "unknown-token";
    case ErrorCode::kMalformedStress: return "malformed-stress";
    case ErrorCode::kIllegalSyllable: return "illegal-syllable";
    case ErrorCode::kAmbiguousSegmentation: return "ambiguous-segmentation";
    case ErrorCode::kDecompositionGap: return "decomposition-gap";
    case ErrorCode::kShapeMismatch: return "shape-mismatch";
    case ErrorCode::kMagicMismatch: return "magic-mismatch";
    case ErrorCode::kTruncated: return "truncated";
    case ErrorCode::kVersionMismatch: return "version-mismatch";
    case ErrorCode::kConfig: return "config";
    case ErrorCode::kIo: return "io";
  }
  return "unknown";
}

/// Process exit status for an error: 2 for configuration and schema
/// problems, 1 for everything caused by input or data content.
inline int exit_status_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::kSchema:
    case ErrorCode::kConfig:
    case ErrorCode::kShapeMismatch:
      return 2;
    default:
      return 1;
  }
}

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message,
        std::optional<std::size_t> position = std::nullopt)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + message),
        code_(code),
        message_(message),
        position_(position) {}

  ErrorCode code() const noexcept { return code_; }

  // The message without the error-code prefix that what() carries.
  const std::string& message() const noexcept { return message_; }

  // Byte offset or token index, depending on the parser that raised it.
  std::optional<std::size_t> position() const noexcept { return position_; }

 private:
  ErrorCode code_;
  std::string message_;
  std::optional<std::size_t> position_;
};

}  // namespace phonfront

#endif  // PHONFRONT_ERROR_HPP_

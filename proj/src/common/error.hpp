// Copyright 2026 The Litpipe Authors
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

namespace litpipe {

enum class ErrorCode {
  kInvalidInput,
  kRateLimited,
  kTransient,
  kParse,
  kProtocol,
  kAcquisitionFailed,
  kEmbeddingIncomplete,
  kUndefinedStrength,
  kInternalConsistency,
  kAssembly,
  kAggregation,
  kIo,
  kCorruptCheckpoint,
  kOversize,
  kRetryExhausted,
  kConfig,
  kStageFailure,
};

std::string_view ErrorCodeName(ErrorCode code);

// Rate limiting and transient network failures are the only classes the
// retry machinery will re-attempt.
constexpr bool IsRetryable(ErrorCode code) {
  return code == ErrorCode::kRateLimited || code == ErrorCode::kTransient;
}

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }
  bool retryable() const noexcept { return IsRetryable(code_); }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void Fail(ErrorCode code, const std::string& message) {
  throw Error(code, message);
}

}  // namespace litpipe

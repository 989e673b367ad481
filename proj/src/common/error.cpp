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

#include "common/error.hpp"

namespace litpipe {

std::string_view ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidInput: return "invalid-input";
    case ErrorCode::kRateLimited: return "rate-limited";
    case ErrorCode::kTransient: return "transient";
    case ErrorCode::kParse: return "parse";
    case ErrorCode::kProtocol: return "protocol";
    case ErrorCode::kAcquisitionFailed: return "acquisition-failed";
    case ErrorCode::kEmbeddingIncomplete: return "embedding-incomplete";
    case ErrorCode::kUndefinedStrength: return "undefined-strength";
    case ErrorCode::kInternalConsistency: return "internal-consistency";
    case ErrorCode::kAssembly: return "assembly";
    case ErrorCode::kAggregation: return "aggregation";
    case ErrorCode::kIo: return "io";
    case ErrorCode::kCorruptCheckpoint: return "corrupt-checkpoint";
    case ErrorCode::kOversize: return "oversize";
    case ErrorCode::kRetryExhausted: return "retry-exhausted";
    case ErrorCode::kConfig: return "config";
    case ErrorCode::kStageFailure: return "stage-failure";
  }
  return "unknown";
}

}  // namespace litpipe

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

#include "infra/backoff.hpp"

#include <algorithm>
#include <cmath>

#include "common/error.hpp"

namespace litpipe::infra {

void ValidatePolicy(const BackoffPolicy& policy) {
  if (!(policy.base_delay.count() > 0)) Fail(ErrorCode::kInvalidInput, "base_delay must be > 0");
  if (!(policy.factor >= 1.0)) Fail(ErrorCode::kInvalidInput, "factor must be >= 1");
  if (policy.max_attempts < 1) Fail(ErrorCode::kInvalidInput, "max_attempts must be >= 1");
  if (policy.max_delay < policy.base_delay) {
    Fail(ErrorCode::kInvalidInput, "max_delay must be >= base_delay");
  }
}

double SeededUniform::Next() {
  std::lock_guard lock(mu_);
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

Seconds BackoffCap(const BackoffPolicy& policy, int attempt) {
  if (attempt < 1) Fail(ErrorCode::kInvalidInput, "attempt must be >= 1");
  // pow overflows to inf for large attempts, which min() then caps.
  double raw = policy.base_delay.count() * std::pow(policy.factor, attempt - 1);
  return Seconds(std::min(policy.max_delay.count(), raw));
}

std::optional<Seconds> NextDelay(const BackoffPolicy& policy, int attempt,
                                 UniformSource& uniform) {
  ValidatePolicy(policy);
  if (attempt > policy.max_attempts) return std::nullopt;
  Seconds cap = BackoffCap(policy, attempt);
  double u = std::clamp(uniform.Next(), 0.0, 1.0);
  return Seconds(u * cap.count());
}

}  // namespace litpipe::infra

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

#include <cstdint>
#include <mutex>
#include <optional>
#include <random>

#include "common/clock.hpp"

namespace litpipe::infra {

struct BackoffPolicy {
  Seconds base_delay{1.0};
  double factor = 2.0;
  Seconds max_delay{60.0};
  int max_attempts = 5;
  // Only full jitter is supported: delay ~ U[0, cap].
};

// Throws Error(kInvalidInput) when base_delay <= 0, factor < 1 or
// max_attempts < 1.
void ValidatePolicy(const BackoffPolicy& policy);

// Source of uniform draws in [0, 1].
class UniformSource {
 public:
  virtual ~UniformSource() = default;
  virtual double Next() = 0;
};

// 53-bit draws from mt19937_64; identical sequences on every platform.
class SeededUniform final : public UniformSource {
 public:
  explicit SeededUniform(std::uint64_t seed) : engine_(seed) {}
  double Next() override;

 private:
  std::mutex mu_;
  std::mt19937_64 engine_;
};

class FixedUniform final : public UniformSource {
 public:
  explicit FixedUniform(double value) : value_(value) {}
  double Next() override { return value_; }

 private:
  double value_;
};

// min(max_delay, base_delay * factor^(attempt-1)) for attempt >= 1.
Seconds BackoffCap(const BackoffPolicy& policy, int attempt);

// Full-jitter delay to wait after failed attempt `attempt` (1-based).
// Returns nullopt once attempt exceeds max_attempts.
std::optional<Seconds> NextDelay(const BackoffPolicy& policy, int attempt,
                                 UniformSource& uniform);

}  // namespace litpipe::infra

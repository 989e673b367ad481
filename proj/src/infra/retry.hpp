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

#include <cstddef>
#include <span>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

#include "common/clock.hpp"
#include "common/error.hpp"
#include "infra/backoff.hpp"

namespace litpipe::infra {

struct RetryStats {
  int attempts = 0;
  // Number of backoff sleeps taken.
  int retries = 0;
  // 0 = primary input; i > 0 = i-th alternative.
  std::size_t alternative_index = 0;
  Seconds total_delay{0};
};

// Raised when every attempt on every input failed retryably. Carries each
// underlying failure in order.
class RetryExhausted : public Error {
 public:
  explicit RetryExhausted(std::vector<Error> causes)
      : Error(ErrorCode::kRetryExhausted, Describe(causes)), causes_(std::move(causes)) {}

  const std::vector<Error>& causes() const { return causes_; }

 private:
  static std::string Describe(const std::vector<Error>& causes) {
    std::string msg = "all " + std::to_string(causes.size()) + " attempts failed";
    if (!causes.empty()) msg += "; last: " + std::string(causes.back().what());
    return msg;
  }
  std::vector<Error> causes_;
};

// Runs op(inputs[0]) with up to policy.max_attempts tries, sleeping a
// full-jitter delay after each retryable failure. When the budget runs out
// the budget restarts on the next input (the alternatives). Non-retryable
// errors propagate immediately.
template <typename Input, typename Fn>
auto WithRetry(Fn&& op, std::span<const Input> inputs, const BackoffPolicy& policy,
               Clock& clock, UniformSource& uniform, RetryStats* stats = nullptr)
    -> std::invoke_result_t<Fn&, const Input&> {
  ValidatePolicy(policy);
  if (inputs.empty()) Fail(ErrorCode::kInvalidInput, "WithRetry needs at least one input");
  RetryStats local;
  RetryStats& s = stats ? *stats : local;
  s = RetryStats{};
  std::vector<Error> causes;
  for (std::size_t alt = 0; alt < inputs.size(); ++alt) {
    s.alternative_index = alt;
    for (int attempt = 1; attempt <= policy.max_attempts; ++attempt) {
      ++s.attempts;
      try {
        return op(inputs[alt]);
      } catch (const Error& e) {
        if (!e.retryable()) throw;
        causes.push_back(e);
      }
      if (attempt == policy.max_attempts) break;
      auto delay = NextDelay(policy, attempt, uniform);
      clock.SleepFor(*delay);
      s.total_delay += *delay;
      ++s.retries;
    }
  }
  throw RetryExhausted(std::move(causes));
}

template <typename Fn>
auto WithRetry(Fn&& op, const BackoffPolicy& policy, Clock& clock, UniformSource& uniform,
               RetryStats* stats = nullptr) -> std::invoke_result_t<Fn&> {
  struct Unit {};
  const Unit unit;
  return WithRetry<Unit>([&](const Unit&) { return op(); }, std::span<const Unit>(&unit, 1),
                         policy, clock, uniform, stats);
}

}  // namespace litpipe::infra

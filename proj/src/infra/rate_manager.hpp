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

#include <map>
#include <mutex>
#include <span>
#include <string>

#include "infra/retry.hpp"

namespace litpipe::infra {

// Shared gate for outbound calls: spaces requests to one source by a minimum
// interval and wraps each call in backoff-with-jitter retry.
class RateManager {
 public:
  RateManager(Clock& clock, UniformSource& uniform, BackoffPolicy policy = {})
      : clock_(clock), uniform_(uniform), policy_(policy) {}

  void SetMinInterval(const std::string& source, Seconds interval);

  // Blocks (on the injected clock) until the source's next slot.
  void Acquire(const std::string& source);

  template <typename Input, typename Fn>
  auto Call(const std::string& source, Fn&& op, std::span<const Input> inputs,
            RetryStats* stats = nullptr) {
    return WithRetry<Input>(
        [&](const Input& in) {
          Acquire(source);
          return op(in);
        },
        inputs, policy_, clock_, uniform_, stats);
  }

  template <typename Fn>
  auto Call(const std::string& source, Fn&& op, RetryStats* stats = nullptr) {
    return WithRetry(
        [&]() {
          Acquire(source);
          return op();
        },
        policy_, clock_, uniform_, stats);
  }

  const BackoffPolicy& policy() const { return policy_; }
  Clock& clock() { return clock_; }

 private:
  Clock& clock_;
  UniformSource& uniform_;
  BackoffPolicy policy_;
  std::mutex mu_;
  std::map<std::string, Seconds> min_interval_;
  std::map<std::string, TimePoint> next_slot_;
};

}  // namespace litpipe::infra

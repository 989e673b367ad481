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

#include "infra/rate_manager.hpp"

namespace litpipe::infra {

void RateManager::SetMinInterval(const std::string& source, Seconds interval) {
  std::lock_guard lock(mu_);
  min_interval_[source] = interval;
}

void RateManager::Acquire(const std::string& source) {
  TimePoint slot;
  {
    std::lock_guard lock(mu_);
    auto interval_it = min_interval_.find(source);
    if (interval_it == min_interval_.end() || interval_it->second.count() <= 0) return;
    TimePoint now = clock_.Now();
    auto [it, inserted] = next_slot_.try_emplace(source, now);
    slot = std::max(now, it->second);
    it->second = slot + std::chrono::duration_cast<TimePoint::duration>(interval_it->second);
    if (slot <= now) return;
  }
  clock_.SleepFor(std::chrono::duration_cast<Seconds>(slot - clock_.Now()));
}

}  // namespace litpipe::infra

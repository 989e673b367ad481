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

#include <chrono>
#include <mutex>
#include <string>

namespace litpipe {

using TimePoint = std::chrono::system_clock::time_point;
using Seconds = std::chrono::duration<double>;

// Time source and sleeper in one: all TTL and backoff logic goes through
// this so tests can run on a simulated clock without real sleeps.
class Clock {
 public:
  virtual ~Clock() = default;
  virtual TimePoint Now() const = 0;
  virtual void SleepFor(Seconds duration) = 0;
};

class SystemClock final : public Clock {
 public:
  TimePoint Now() const override;
  void SleepFor(Seconds duration) override;
};

// Manual clock: SleepFor advances time instantly and records the total.
class ManualClock final : public Clock {
 public:
  explicit ManualClock(TimePoint start = TimePoint{}) : now_(start) {}

  TimePoint Now() const override;
  void SleepFor(Seconds duration) override;
  void Advance(Seconds duration);
  Seconds TotalSlept() const;
  int SleepCount() const;

 private:
  mutable std::mutex mu_;
  TimePoint now_;
  Seconds slept_{0};
  int sleeps_ = 0;
};

// RFC 3339 UTC with second precision, e.g. "2026-10-16T08:30:00Z".
std::string FormatUtc(TimePoint t);
TimePoint ParseUtc(const std::string& s);

struct CivilDate {
  int year;
  unsigned month;
  unsigned day;
};
CivilDate ToCivil(TimePoint t);

}  // namespace litpipe

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

#include "common/clock.hpp"

#include <cstdio>
#include <thread>

#include <fmt/format.h>

#include "common/error.hpp"

namespace litpipe {

TimePoint SystemClock::Now() const { return std::chrono::system_clock::now(); }

void SystemClock::SleepFor(Seconds duration) {
  if (duration.count() > 0) std::this_thread::sleep_for(duration);
}

TimePoint ManualClock::Now() const {
  std::lock_guard lock(mu_);
  return now_;
}

void ManualClock::SleepFor(Seconds duration) {
  std::lock_guard lock(mu_);
  now_ += std::chrono::duration_cast<TimePoint::duration>(duration);
  slept_ += duration;
  ++sleeps_;
}

void ManualClock::Advance(Seconds duration) {
  std::lock_guard lock(mu_);
  now_ += std::chrono::duration_cast<TimePoint::duration>(duration);
}

Seconds ManualClock::TotalSlept() const {
  std::lock_guard lock(mu_);
  return slept_;
}

int ManualClock::SleepCount() const {
  std::lock_guard lock(mu_);
  return sleeps_;
}

CivilDate ToCivil(TimePoint t) {
  using namespace std::chrono;
  auto days = floor<std::chrono::days>(t);
  year_month_day ymd{days};
  return {static_cast<int>(ymd.year()), static_cast<unsigned>(ymd.month()),
          static_cast<unsigned>(ymd.day())};
}

std::string FormatUtc(TimePoint t) {
  using namespace std::chrono;
  auto secs = floor<seconds>(t);
  auto days = floor<std::chrono::days>(secs);
  year_month_day ymd{days};
  hh_mm_ss hms{secs - days};
  return fmt::format("{:04}-{:02}-{:02}T{:02}:{:02}:{:02}Z", static_cast<int>(ymd.year()),
                     static_cast<unsigned>(ymd.month()), static_cast<unsigned>(ymd.day()),
                     hms.hours().count(), hms.minutes().count(), hms.seconds().count());
}

TimePoint ParseUtc(const std::string& s) {
  int y = 0;
  unsigned mo = 0, d = 0, h = 0, mi = 0, se = 0;
  char tail = 0;
  if (std::sscanf(s.c_str(), "%d-%u-%uT%u:%u:%u%c", &y, &mo, &d, &h, &mi, &se, &tail) != 7 ||
      tail != 'Z') {
    Fail(ErrorCode::kInvalidInput, "expected UTC timestamp YYYY-MM-DDTHH:MM:SSZ, got '" + s + "'");
  }
  using namespace std::chrono;
  year_month_day ymd{year{y}, month{mo}, day{d}};
  if (!ymd.ok() || h > 23 || mi > 59 || se > 60) {
    Fail(ErrorCode::kInvalidInput, "invalid timestamp '" + s + "'");
  }
  return sys_days{ymd} + hours{h} + minutes{mi} + seconds{se};
}

}  // namespace litpipe

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

#include <doctest.h>

#include <sys/wait.h>
#include <unistd.h>

#include <json.hpp>

#include "common/clock.hpp"
#include "common/error.hpp"
#include "common/files.hpp"
#include "infra/api_cache.hpp"
#include "infra/backoff.hpp"
#include "infra/cache.hpp"
#include "infra/checkpoint.hpp"
#include "infra/prompt.hpp"
#include "infra/rate_manager.hpp"
#include "infra/retry.hpp"
#include "oracles/oracles.hpp"
#include "support/support.hpp"

namespace {

using namespace litpipe;
using namespace litpipe::infra;
using namespace std::chrono_literals;

TimePoint At(double s) {
  return TimePoint{} + std::chrono::duration_cast<TimePoint::duration>(Seconds(s));
}

CacheLimits Limits(std::optional<std::size_t> entries, std::optional<std::size_t> bytes,
                   std::optional<Seconds> ttl) {
  CacheLimits l;
  l.max_entries = entries;
  l.max_bytes = bytes;
  l.ttl = ttl;
  return l;
}

}  // namespace

TEST_SUITE("infra") {
  TEST_CASE("LRU: capacity 2, touched entry survives") {
    TtlLruCache c(Limits(2, std::nullopt, std::nullopt));
    c.Put("a", "1", At(0));
    c.Put("b", "2", At(1));
    CHECK(c.Get("a", At(2)) == "1");
    c.Put("c", "3", At(3));
    CHECK_FALSE(c.Contains("b"));
    CHECK(c.Contains("a"));
    CHECK(c.Contains("c"));
    CHECK(c.size() == 2);
    CHECK_FALSE(c.Get("zzz", At(4)));
  }

  TEST_CASE("TTL expiry purges on observation") {
    TtlLruCache c(Limits(std::nullopt, std::nullopt, Seconds(100)));
    c.Put("k", "v", At(0));
    CHECK(c.Get("k", At(99.9)) == "v");
    CHECK_FALSE(c.Get("k", At(100)));
    CHECK_FALSE(c.Contains("k"));
    c.Put("k", "v2", At(150));
    CHECK(c.Get("k", At(200)) == "v2");
  }

  TEST_CASE("byte limit and oversize values") {
    TtlLruCache c(Limits(std::nullopt, 10, std::nullopt));
    c.Put("a", "12345", At(0));
    c.Put("b", "12345", At(1));
    CHECK(c.bytes() == 10);
    c.Put("c", "1", At(2));
    CHECK_FALSE(c.Contains("a"));
    CHECK(c.bytes() <= 10);
    try {
      c.Put("big", std::string(11, 'x'), At(3));
      FAIL("expected oversize");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::kOversize);
    }
  }

  TEST_CASE("cache matches the reference model under random traffic") {
    TtlLruCache c(Limits(5, std::nullopt, Seconds(30)));
    oracle::LruModel model(5, 30.0);
    std::mt19937_64 rng(3);
    double t = 0;
    for (int op = 0; op < 2000; ++op) {
      t += std::uniform_real_distribution<double>(0, 3)(rng);
      std::string key = "k" + std::to_string(rng() % 9);
      if (rng() % 2) {
        std::string value = std::to_string(op);
        c.Put(key, value, At(t));
        model.Put(key, value, t);
      } else {
        REQUIRE(c.Get(key, At(t)) == model.Get(key, t));
      }
    }
  }

  TEST_CASE("backoff caps and exhaustion") {
    BackoffPolicy p;
    FixedUniform one(1.0);
    CHECK(NextDelay(p, 3, one)->count() == doctest::Approx(4.0));
    p.max_attempts = 20;
    CHECK(NextDelay(p, 10, one)->count() == doctest::Approx(60.0));
    CHECK(BackoffCap(p, 1).count() == doctest::Approx(1.0));
    p.max_attempts = 5;
    CHECK_FALSE(NextDelay(p, 6, one));
    FixedUniform half(0.5);
    CHECK(NextDelay(p, 2, half)->count() == doctest::Approx(1.0));
    BackoffPolicy bad;
    bad.factor = 0.5;
    CHECK_THROWS_AS(ValidatePolicy(bad), Error);
  }

  TEST_CASE("seeded jitter is reproducible") {
    BackoffPolicy p;
    SeededUniform a(9), b(9);
    for (int i = 1; i <= 5; ++i) CHECK(NextDelay(p, i, a)->count() == NextDelay(p, i, b)->count());
  }

  TEST_CASE("retry: two transient failures then success") {
    ManualClock clock;
    FixedUniform one(1.0);
    RetryStats stats;
    int calls = 0;
    auto v = WithRetry(
        [&] {
          if (++calls < 3) Fail(ErrorCode::kTransient, "flaky");
          return 42;
        },
        BackoffPolicy{}, clock, one, &stats);
    CHECK(v == 42);
    CHECK(stats.retries == 2);
    CHECK(stats.attempts == 3);
    CHECK(clock.SleepCount() == 2);
    CHECK(clock.TotalSlept().count() == doctest::Approx(3.0));
  }

  TEST_CASE("retry falls back to the alternative inputs") {
    ManualClock clock;
    FixedUniform zero(0.0);
    BackoffPolicy p;
    p.max_attempts = 3;
    RetryStats stats;
    std::vector<std::string> queries = {"primary", "alt one", "alt two"};
    auto got = WithRetry<std::string>(
        [&](const std::string& q) {
          if (q == "primary") Fail(ErrorCode::kRateLimited, "429");
          return q;
        },
        std::span<const std::string>(queries), p, clock, zero, &stats);
    CHECK(got == "alt one");
    CHECK(stats.alternative_index == 1);
    CHECK(stats.attempts == 4);
  }

  TEST_CASE("non-retryable errors propagate at once") {
    ManualClock clock;
    FixedUniform one(1.0);
    int calls = 0;
    try {
      WithRetry(
          [&]() -> int {
            ++calls;
            Fail(ErrorCode::kParse, "bad json");
          },
          BackoffPolicy{}, clock, one);
      FAIL("expected parse error");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::kParse);
    }
    CHECK(calls == 1);
    CHECK(clock.SleepCount() == 0);
  }

  TEST_CASE("exhaustion carries every cause") {
    ManualClock clock;
    FixedUniform one(1.0);
    BackoffPolicy p;
    p.max_attempts = 4;
    try {
      WithRetry([]() -> int { Fail(ErrorCode::kTransient, "down"); }, p, clock, one);
      FAIL("expected exhaustion");
    } catch (const RetryExhausted& e) {
      CHECK(e.code() == ErrorCode::kRetryExhausted);
      CHECK(e.causes().size() == 4);
      CHECK_FALSE(e.retryable());
    }
    CHECK(clock.SleepCount() == 3);
    CHECK(clock.TotalSlept().count() == doctest::Approx(1 + 2 + 4));
  }

  TEST_CASE("rate manager spaces calls by the minimum interval") {
    ManualClock clock(At(1000));
    FixedUniform one(1.0);
    RateManager rm(clock, one);
    rm.SetMinInterval("s2", Seconds(1.0));
    std::vector<TimePoint> times;
    for (int i = 0; i < 4; ++i) rm.Call("s2", [&] { times.push_back(clock.Now()); return 0; });
    for (std::size_t i = 1; i < times.size(); ++i) {
      CHECK(Seconds(times[i] - times[i - 1]).count() >= 1.0 - 1e-9);
    }
    rm.Call("other", [&] { times.push_back(clock.Now()); return 0; });
    CHECK(times.back() == times[3]);
  }

  TEST_CASE("checkpoint save, load and tamper detection") {
    testing_support::TempDir dir;
    files::WriteFileAtomic(dir / "corpus.json", "{\"papers\": []}");
    Checkpoint cp{Stage::kAcquired, HashArtifacts(dir.path(), {{"corpus", "corpus.json"}}),
                  "2026-01-15T00:00:00Z"};
    CHECK_FALSE(LoadCheckpoint(dir.path()));
    SaveCheckpoint(dir.path(), cp);
    auto back = LoadCheckpoint(dir.path());
    REQUIRE(back);
    CHECK(back->stage == Stage::kAcquired);
    REQUIRE(back->artifacts.size() == 1);
    CHECK(back->artifacts[0].sha256 == cp.artifacts[0].sha256);

    files::WriteFileAtomic(dir / "corpus.json", "{\"papers\": [1]}");
    try {
      LoadCheckpoint(dir.path());
      FAIL("expected corrupt checkpoint");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::kCorruptCheckpoint);
    }
    files::WriteFileAtomic(dir / kCheckpointFile, "{not json");
    CHECK_THROWS_AS(LoadCheckpoint(dir.path()), Error);
    CHECK(StageFromName(StageName(Stage::kClustered)) == Stage::kClustered);
    CHECK_FALSE(StageFromName("bogus"));
  }

  TEST_CASE("run directory lock: held, released, stale") {
    testing_support::TempDir dir;
    {
      RunDirLock lock(dir.path());
      CHECK_THROWS_AS(RunDirLock(dir.path()), Error);
    }
    { RunDirLock again(dir.path()); }

    pid_t child = fork();
    if (child == 0) _exit(0);
    waitpid(child, nullptr, 0);
    files::WriteFileAtomic(dir / ".litpipe.lock", std::to_string(child));
    RunDirLock reclaimed(dir.path());
    CHECK(files::ReadFile(dir / ".litpipe.lock") == std::to_string(getpid()));
  }

  TEST_CASE("api cache: fresh within a day, stale afterwards") {
    testing_support::TempDir dir;
    auto key = ApiCache::Key("semantic-scholar", "LLM agents", "0");
    CHECK(key == ApiCache::Key("semantic-scholar", "LLM agents", "0"));
    CHECK(key != ApiCache::Key("arxiv", "LLM agents", "0"));
    {
      ApiCache cache(dir.path());
      cache.Put(key, "body", {{"status", 200}}, At(0));
      CHECK(cache.GetFresh(key, At(3600)) == "body");
    }
    ApiCache reopened(dir.path());
    CHECK(reopened.GetFresh(key, At(3600)) == "body");
    CHECK_FALSE(reopened.GetFresh(key, At(24 * 3600 + 1)));
    CHECK(reopened.GetStale(key) == "body");
    CHECK_FALSE(reopened.GetStale("missing"));
  }

  TEST_CASE("prompt layout parsing") {
    auto f = ParsePrompt(
        "TASK: draft-section\nSECTION: Intro\nPAPERS:\n"
        "- CITE: [Yao et al., 2022] | TITLE: ReAct | YEAR: 2022 | AUTHORS: S. Yao\n"
        "  ABSTRACT: ignored\nSURVEY:\nline one\nline two");
    CHECK(f.task == "draft-section");
    CHECK(f.Get("SECTION") == "Intro");
    CHECK(f.Get("MISSING", "dflt") == "dflt");
    REQUIRE(f.papers.size() == 1);
    CHECK(f.papers[0].cite == "[Yao et al., 2022]");
    CHECK(f.papers[0].title == "ReAct");
    CHECK(f.papers[0].year == "2022");
    CHECK(f.survey.rfind("line one\nline two", 0) == 0);
  }

  TEST_CASE("utc formatting round trip") {
    auto t = ParseUtc("2026-10-16T08:30:00Z");
    CHECK(FormatUtc(t) == "2026-10-16T08:30:00Z");
    CHECK(ToCivil(t).year == 2026);
  }
}

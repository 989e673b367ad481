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

#include <algorithm>
#include <deque>
#include <map>
#include <random>
#include <set>

#include <json.hpp>

#include "acquisition/acquire.hpp"
#include "acquisition/dedup.hpp"
#include "acquisition/filter.hpp"
#include "acquisition/normalize.hpp"
#include "acquisition/query_expansion.hpp"
#include "acquisition/sources.hpp"
#include "common/clock.hpp"
#include "common/error.hpp"
#include "common/text.hpp"
#include "infra/api_cache.hpp"
#include "infra/backoff.hpp"
#include "infra/http.hpp"
#include "infra/rate_manager.hpp"
#include "oracles/oracles.hpp"
#include "support/support.hpp"

namespace {

using namespace litpipe;
using namespace litpipe::acquisition;
using nlohmann::json;

bool HasQuery(const QuerySet& qs, const std::string& q) {
  return std::find(qs.queries.begin(), qs.queries.end(), q) != qs.queries.end();
}

// Replays canned responses in order; throws kTransient once exhausted.
class ScriptedTransport : public infra::HttpTransport {
 public:
  explicit ScriptedTransport(std::deque<infra::HttpResponse> replies)
      : replies_(std::move(replies)) {}
  infra::HttpResponse Send(const infra::HttpRequest& request) override {
    requests.push_back(request);
    if (replies_.empty()) Fail(ErrorCode::kTransient, "connection refused");
    auto r = replies_.front();
    replies_.pop_front();
    return r;
  }
  std::vector<infra::HttpRequest> requests;

 private:
  std::deque<infra::HttpResponse> replies_;
};

json S2Record(const std::string& id, const std::string& title, int year, int citations,
              const std::string& abstract) {
  return {{"paperId", id},
          {"title", title},
          {"year", year},
          {"citationCount", citations},
          {"abstract", abstract},
          {"authors", json::array({{{"name", "Ada Author"}}})}};
}

std::string LongAbstract() { return std::string(220, 'x'); }

// Serves a fixed record list per query; queries it does not know get
// nothing. Optionally fails every call.
class PerQuerySource : public PaperSource {
 public:
  PerQuerySource(Source source, std::map<std::string, std::vector<json>> by_query)
      : source_(source), by_query_(std::move(by_query)) {}
  Source source() const override { return source_; }
  RawPaperBatch Fetch(const std::string& query, const std::string&) override {
    if (failing) Fail(ErrorCode::kTransient, "service unavailable");
    auto it = by_query_.find(query);
    if (it == by_query_.end()) return {{}, std::nullopt};
    return {it->second, std::nullopt};
  }
  bool failing = false;

 private:
  Source source_;
  std::map<std::string, std::vector<json>> by_query_;
};

std::string RandomTitle(std::mt19937_64& rng) {
  static const std::vector<std::string> vocab = {
      "adaptive",  "agents",   "alignment", "benchmark", "causal",    "compositional",
      "contrastive", "curriculum", "debate",  "decoding",  "distilled", "embodied",
      "emergent",  "episodic", "feedback",  "grounded",  "hierarchical", "instruction",
      "latent",    "memory",   "modular",   "navigation", "planning",  "preference",
      "program",   "reasoning", "reflection", "retrieval", "reward",   "robust",
      "scalable",  "search",   "self",      "semantic",  "sparse",    "structured",
      "symbolic",  "tool",     "verifier",  "world"};
  std::string t;
  for (int i = 0; i < 6; ++i) {
    if (i) t += ' ';
    t += vocab[std::uniform_int_distribution<std::size_t>(0, vocab.size() - 1)(rng)];
  }
  return t;
}

}  // namespace

TEST_SUITE("acquisition") {
  TEST_CASE("query expansion covers synonyms and related terms") {
    auto qs = ExpandQueries("LLM agents");
    CHECK(HasQuery(qs, "LLM agents"));
    CHECK(HasQuery(qs, "language model agents"));
    CHECK(HasQuery(qs, "LLM-based agents"));
    CHECK(HasQuery(qs, "agent architectures"));
    CHECK(qs.queries.size() >= kMinQueries);
    CHECK(qs.queries.size() <= kMaxQueries);
    CHECK(qs.provenance.size() == qs.queries.size());
    std::set<std::string> folded;
    for (const auto& q : qs.queries) folded.insert(text::ToLower(q));
    CHECK(folded.size() == qs.queries.size());
  }

  TEST_CASE("acronym table expands RAG") {
    auto qs = ExpandQueries("RAG");
    CHECK(HasQuery(qs, "RAG"));
    CHECK(HasQuery(qs, "retrieval-augmented generation"));
    bool acronym_rule = false;
    for (std::size_t i = 0; i < qs.queries.size(); ++i) {
      if (qs.queries[i] == "retrieval-augmented generation") {
        acronym_rule = qs.provenance[i] == ExpansionRule::kAcronym;
      }
    }
    CHECK(acronym_rule);
  }

  TEST_CASE("empty or blank topic is invalid input") {
    for (const char* topic : {"", "   ", "\t\n"}) {
      try {
        ExpandQueries(topic);
        FAIL("expected an error");
      } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::kInvalidInput);
      }
    }
  }

  TEST_CASE("expansion is deterministic") {
    CHECK(ExpandQueries("instruction tuning").queries ==
          ExpandQueries("  instruction   tuning ").queries);
  }

  TEST_CASE("semantic scholar page of three records") {
    json body = {{"total", 3},
                 {"data", json::array({S2Record("a", "One", 2023, 1, "x"),
                                       S2Record("b", "Two", 2023, 1, "x"),
                                       S2Record("c", "Three", 2023, 1, "x")})}};
    auto http = std::make_shared<ScriptedTransport>(
        std::deque<infra::HttpResponse>{{200, body.dump()}});
    auto source = MakeSemanticScholarSource(http, std::string("secret"));
    auto batch = source->Fetch("LLM agents", "");
    CHECK(batch.records.size() == 3);
    CHECK_FALSE(batch.next_page.has_value());
    REQUIRE(http->requests.size() == 1);
    CHECK(http->requests[0].headers.at("x-api-key") == "secret");
    CHECK(http->requests[0].url.find("LLM") != std::string::npos);
  }

  TEST_CASE("arxiv feed of two entries") {
    const std::string feed = R"(<?xml version="1.0" encoding="UTF-8"?>
<feed xmlns="http://www.w3.org/2005/Atom">
  <entry>
    <id>http://arxiv.org/abs/2210.03629v3</id>
    <published>2022-10-06T00:00:00Z</published>
    <title>ReAct: Synergizing Reasoning and Acting in Language Models</title>
    <summary>We explore the use of LLMs to generate reasoning traces.</summary>
    <author><name>Shunyu Yao</name></author>
    <author><name>Jeffrey Zhao</name></author>
  </entry>
  <entry>
    <id>http://arxiv.org/abs/2305.10601v1</id>
    <published>2023-05-17T00:00:00Z</published>
    <title>Tree of Thoughts</title>
    <summary>Deliberate problem solving.</summary>
    <author><name>Shunyu Yao</name></author>
  </entry>
</feed>)";
    auto http = std::make_shared<ScriptedTransport>(std::deque<infra::HttpResponse>{{200, feed}});
    auto batch = MakeArxivSource(http)->Fetch("instruction tuning", "");
    REQUIRE(batch.records.size() == 2);
    auto p = NormalizeRecord(batch.records[0], Source::kArxiv);
    REQUIRE(p.paper);
    CHECK(p.paper->source_id == "2210.03629");
    CHECK(p.paper->year == 2022);
    CHECK(p.paper->citation_count == 0);
    CHECK(p.paper->authors == std::vector<std::string>{"Shunyu Yao", "Jeffrey Zhao"});
  }

  TEST_CASE("malformed payloads are parse errors") {
    CHECK_THROWS_AS(ParseSemanticScholarResponse("{not json"), Error);
    CHECK_THROWS_AS(ParseArxivFeed("<feed><entry>", 0, 10), Error);
    try {
      ParseSemanticScholarResponse("{\"data\": 3}");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::kParse);
      CHECK_FALSE(e.retryable());
    }
  }

  TEST_CASE("HTTP statuses map onto the error taxonomy") {
    auto code_for = [](int status) {
      try {
        infra::ThrowForStatus({status, ""}, "call");
      } catch (const Error& e) {
        return e.code();
      }
      return ErrorCode::kInternalConsistency;
    };
    CHECK(code_for(429) == ErrorCode::kRateLimited);
    CHECK(code_for(503) == ErrorCode::kTransient);
    CHECK(code_for(404) == ErrorCode::kProtocol);
  }

  TEST_CASE("two 429s then success: two backoff retries") {
    json body = {{"data", json::array({S2Record("a", "One", 2023, 1, "x")})}};
    auto http = std::make_shared<ScriptedTransport>(std::deque<infra::HttpResponse>{
        {429, ""}, {429, ""}, {200, body.dump()}});
    auto source = MakeSemanticScholarSource(http, std::nullopt);
    ManualClock clock;
    infra::SeededUniform uniform(3);
    infra::RateManager rate(clock, uniform);
    auto out = FetchSource(*source, "LLM agents", "", rate, nullptr);
    CHECK(out.retries == 2);
    CHECK(out.batch.records.size() == 1);
    CHECK(clock.SleepCount() == 2);
    CHECK(clock.TotalSlept().count() <= oracle::BackoffCap(1, 2, 60, 1) +
                                            oracle::BackoffCap(1, 2, 60, 2));
  }

  TEST_CASE("alternative formulations after the primary query fails") {
    auto alts = AlternativeQueries("(LLM agents) AND \"planning\"", "LLM agents");
    REQUIRE(alts.size() == 2);
    CHECK(alts[0] == "LLM agents planning");
    CHECK(alts[1] == "LLM agents");
    CHECK(AlternativeQueries("LLM agents", "LLM agents").empty());
  }

  TEST_CASE("normalization rules") {
    auto r = NormalizeRecord(S2Record("x", "  ReAct:  Synergizing\n Reasoning ", 2022, 5, "a"),
                             Source::kSemanticScholar);
    REQUIRE(r.paper);
    CHECK(r.paper->title == "ReAct: Synergizing Reasoning");
    CHECK(r.paper->id == "s2:x");

    json dated = {{"paperId", "d"}, {"title", "Dated"}, {"publicationDate", "2024-03-01"}};
    auto d = NormalizeRecord(dated, Source::kSemanticScholar);
    REQUIRE(d.paper);
    CHECK(d.paper->year == 2024);
    CHECK(d.paper->citation_count == 0);

    CHECK(NormalizeRecord({{"paperId", "n"}, {"year", 2024}}, Source::kSemanticScholar).rejection ==
          "no-title");
    CHECK(NormalizeRecord({{"paperId", "n"}, {"title", "T"}}, Source::kSemanticScholar).rejection ==
          "no-year");
  }

  TEST_CASE("title similarity") {
    const std::string react = "ReAct: Synergizing Reasoning and Acting";
    CHECK(TitleSimilarity(react, react) == 1.0);
    CHECK(TitleSimilarity("abc", "abd") == doctest::Approx(2.0 / 3.0));
    CHECK(TitleSimilarity("alpha", "zzzzz") == 0.0);
    CHECK(TitleSimilarity("", "") == 1.0);
    CHECK(TitleSimilarity("", "x") == 0.0);
    CHECK(TitleSimilarity("ReAct: Synergizing", "react  synergizing") == 1.0);
  }

  TEST_CASE("title similarity agrees with the edit-distance oracle") {
    std::mt19937_64 rng(11);
    for (int i = 0; i < 300; ++i) {
      auto a = RandomTitle(rng);
      auto b = i % 3 ? RandomTitle(rng) : a.substr(0, a.size() - i % 7);
      auto na = text::NormalizeForMatch(a);
      auto nb = text::NormalizeForMatch(b);
      CHECK(EditDistance(na, nb) == oracle::Levenshtein(na, nb));
      CHECK(TitleSimilarity(a, b) == doctest::Approx(oracle::LevenshteinSimilarity(na, nb)));
    }
  }

  TEST_CASE("exact duplicate across sources keeps the semantic scholar copy") {
    auto a = testing_support::MakePaper("s2:1", "Tree of Thoughts", {"S. Yao"}, 2023, 10);
    auto b = a;
    b.id = "arxiv:1";
    b.source = Source::kArxiv;
    auto kept = Deduplicate({b, a}, 0.90);
    REQUIRE(kept.size() == 1);
    CHECK(kept[0].source == Source::kSemanticScholar);
  }

  TEST_CASE("below-threshold pairs both survive") {
    // 10-character strings one edit apart sit at 0.90; two edits at 0.80.
    auto a = testing_support::MakePaper("1", "abcdefghij", {"A"}, 2023);
    auto b = testing_support::MakePaper("2", "abcdefghzz", {"B"}, 2023);
    CHECK(TitleSimilarity(a.title, b.title) < 0.90);
    CHECK(Deduplicate({a, b}, 0.90).size() == 2);
    auto c = testing_support::MakePaper("3", "abcdefghiz", {"C"}, 2023, 1);
    CHECK(Deduplicate({a, c}, 0.90).size() == 1);
    CHECK_THROWS_AS(Deduplicate({a}, 1.5), Error);
  }

  TEST_CASE("filter rules and per-rule rejection counts") {
    AcquisitionConfig config;
    config.year_min = 2020;
    config.year_max = 2025;
    CivilDate today{2026, 1, 15};
    std::vector<Paper> papers;
    for (int i = 0; i < 7; ++i) {
      papers.push_back(testing_support::MakePaper("ok" + std::to_string(i), "Fine paper",
                                                  {"A"}, 2023, 5));
    }
    papers.push_back(testing_support::MakePaper("old", "Old", {"A"}, 2019, 50));
    papers.push_back(testing_support::MakePaper("short", "Short", {"A"}, 2023, 50, "tiny"));
    papers.push_back(testing_support::MakePaper("uncited", "Uncited", {"A"}, 2021, 0));
    auto r = FilterCorpus(papers, config, today);
    CHECK(r.kept.size() == 7);
    CHECK(r.rejections == FilterRejections{1, 1, 1});

    auto empty = testing_support::MakePaper("e", "Empty", {"A"}, 2023, 5);
    empty.abstract.clear();
    CHECK(FilterCorpus({empty}, config, today).kept.empty());
  }

  TEST_CASE("adaptive citation floor spares recent papers") {
    AcquisitionConfig config;
    CivilDate today{2026, 1, 15};
    auto fresh = testing_support::MakePaper("f", "Fresh", {"A"}, 2025, 0);
    auto old = testing_support::MakePaper("o", "Old", {"A"}, 2022, 0);
    CHECK(MinCitationsFor(fresh, config, today) == 0);
    CHECK(MinCitationsFor(old, config, today) == 1);
    config.min_citations = 7;
    CHECK(MinCitationsFor(fresh, config, today) == 7);
    CHECK(EffectiveYearMax(AcquisitionConfig{}, today) == 2026);
  }

  TEST_CASE("end to end: 120 raw records with 20 duplicates and 10 violations") {
    std::mt19937_64 rng(120);
    std::vector<json> records;
    std::set<std::string> titles;
    while (titles.size() < 100) titles.insert(RandomTitle(rng));
    int n = 0;
    for (const auto& t : titles) {
      int year = 2023;
      int cites = 20 + n;
      std::string abstract = LongAbstract();
      if (n < 4) year = 2018;                    // year rule
      if (n >= 4 && n < 7) abstract = "short";   // abstract rule
      if (n >= 7 && n < 10) {                    // citation rule
        year = 2021;
        cites = 0;
      }
      records.push_back(S2Record("p" + std::to_string(n), t, year, cites, abstract));
      ++n;
    }
    for (int d = 0; d < 20; ++d) {
      const auto& orig = records[static_cast<std::size_t>(50 + d)];
      records.push_back(S2Record("dup" + std::to_string(d),
                                 text::ToLower(orig["title"].get<std::string>()) + ".",
                                 2023, 1, LongAbstract()));
    }
    REQUIRE(records.size() == 120);

    auto queries = ExpandQueries("LLM agents").queries;
    std::map<std::string, std::vector<json>> by_query;
    for (std::size_t r = 0; r < records.size(); ++r) {
      by_query[queries[r % queries.size()]].push_back(records[r]);
    }
    PerQuerySource s2(Source::kSemanticScholar, by_query);
    PerQuerySource arxiv(Source::kArxiv, {});

    ManualClock clock;
    infra::FixedUniform uniform(0.0);
    infra::RateManager rate(clock, uniform);
    AcquisitionConfig config;
    config.max_concurrency = 1;
    AcquisitionContext ctx{{&s2, &arxiv}, &rate, nullptr, nullptr, ParseUtc("2026-01-15T00:00:00Z")};
    auto result = Acquire("LLM agents", config, ctx);
    CHECK(result.corpus.stats == CorpusStats{120, 100, 90, 90});
    CHECK(result.corpus.papers.size() == 90);
    CHECK(result.report.filter_rejections == FilterRejections{4, 3, 3});
    CHECK_FALSE(result.corpus.degraded);
    for (const auto& p : result.corpus.papers) CHECK(p.id.rfind("s2:p", 0) == 0);

    config.target_paper_count = 30;
    auto capped = Acquire("LLM agents", config, ctx);
    REQUIRE(capped.corpus.papers.size() == 30);
    // The cap keeps the most cited papers.
    for (const auto& p : capped.corpus.papers) CHECK(p.citation_count >= 20 + 70);
  }

  TEST_CASE("one source down: degraded but served") {
    std::map<std::string, std::vector<json>> by_query;
    by_query["LLM agents"] = {S2Record("a", "Solo paper on agents", 2024, 4, LongAbstract())};
    PerQuerySource s2(Source::kSemanticScholar, by_query);
    PerQuerySource arxiv(Source::kArxiv, {});
    arxiv.failing = true;
    ManualClock clock;
    infra::FixedUniform uniform(0.0);
    infra::RateManager rate(clock, uniform);
    AcquisitionConfig config;
    config.max_concurrency = 1;
    AcquisitionContext ctx{{&s2, &arxiv}, &rate, nullptr, nullptr, ParseUtc("2026-01-15T00:00:00Z")};
    auto result = Acquire("LLM agents", config, ctx);
    CHECK(result.corpus.degraded);
    CHECK(result.corpus.papers.size() == 1);
    CHECK_FALSE(result.report.sources.at("arxiv").available);
  }

  TEST_CASE("all sources down with a warm cache: served stale, degraded") {
    testing_support::TempDir dir;
    std::map<std::string, std::vector<json>> by_query;
    by_query["LLM agents"] = {S2Record("a", "Cached paper on agents", 2024, 4, LongAbstract())};
    PerQuerySource s2(Source::kSemanticScholar, by_query);
    PerQuerySource arxiv(Source::kArxiv, {});
    ManualClock clock(ParseUtc("2026-01-15T00:00:00Z"));
    infra::FixedUniform uniform(0.0);
    infra::RateManager rate(clock, uniform);
    AcquisitionConfig config;
    config.max_concurrency = 1;
    {
      infra::ApiCache cache(dir.path());
      AcquisitionContext ctx{{&s2, &arxiv}, &rate, &cache, nullptr, clock.Now()};
      CHECK(Acquire("LLM agents", config, ctx).corpus.papers.size() == 1);
    }
    s2.failing = true;
    arxiv.failing = true;
    clock.Advance(std::chrono::hours(72));
    infra::ApiCache cache(dir.path());
    AcquisitionContext ctx{{&s2, &arxiv}, &rate, &cache, nullptr, clock.Now()};
    auto result = Acquire("LLM agents", config, ctx);
    CHECK(result.corpus.degraded);
    REQUIRE(result.corpus.papers.size() == 1);
    CHECK(result.corpus.papers[0].title == "Cached paper on agents");
    CHECK(result.report.sources.at("semantic-scholar").stale_hits > 0);
  }

  TEST_CASE("all sources down and no cache: acquisition failed") {
    PerQuerySource s2(Source::kSemanticScholar, {});
    s2.failing = true;
    ManualClock clock;
    infra::FixedUniform uniform(0.0);
    infra::RateManager rate(clock, uniform);
    AcquisitionConfig config;
    config.max_concurrency = 1;
    AcquisitionContext ctx{{&s2}, &rate, nullptr, nullptr, ParseUtc("2026-01-15T00:00:00Z")};
    try {
      Acquire("LLM agents", config, ctx);
      FAIL("expected failure");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::kAcquisitionFailed);
    }
    try {
      Acquire("", config, ctx);
      FAIL("expected failure");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::kInvalidInput);
    }
  }
}

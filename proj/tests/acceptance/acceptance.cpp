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

// Acceptance suite: one PASS/FAIL line per criterion, mock providers only.

#include <signal.h>
#include <sys/wait.h>
#include <unistd.h>

#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include <fmt/core.h>
#include <json.hpp>

#include "acquisition/dedup.hpp"
#include "acquisition/types.hpp"
#include "clustering/cluster.hpp"
#include "clustering/matrix.hpp"
#include "clustering/metrics.hpp"
#include "clustering/report.hpp"
#include "clustering/select_k.hpp"
#include "clustering/tfidf.hpp"
#include "common/clock.hpp"
#include "common/files.hpp"
#include "common/text.hpp"
#include "embedding/embed_corpus.hpp"
#include "embedding/provider.hpp"
#include "evaluator/evaluate.hpp"
#include "evaluator/rubric.hpp"
#include "infra/backoff.hpp"
#include "infra/cache.hpp"
#include "oracles/oracles.hpp"
#include "pipeline/run.hpp"
#include "support/support.hpp"
#include "writer/citations.hpp"

namespace {

namespace acq = litpipe::acquisition;
namespace cl = litpipe::clustering;
namespace ev = litpipe::evaluator;
namespace infra = litpipe::infra;
namespace pl = litpipe::pipeline;
namespace ts = testing_support;

struct Outcome {
  bool pass = false;
  std::string detail;
};

struct Criterion {
  int id;
  std::string name;
  double budget_ms;  // 0 means no runtime bound
  std::function<Outcome()> body;
};

// ---------------------------------------------------------------- 1

struct TableRow {
  const char* label;
  double core, writing, depth, overall;
};

constexpr std::array<TableRow, 14> kTableRows = {{
    {"topic 1", 8.75, 8.25, 7.63, 8.43},
    {"topic 2", 8.08, 8.35, 7.90, 8.14},
    {"topic 3", 7.38, 8.13, 8.38, 7.74},
    {"topic 4", 7.75, 8.25, 7.38, 7.79},
    {"topic 5", 8.50, 8.30, 7.80, 8.30},
    {"topic 6", 8.90, 8.60, 8.40, 8.70},
    {"average", 8.23, 8.31, 7.92, 8.18},
    {"baseline 1", 3.50, 4.50, 5.50, 4.20},
    {"baseline 2", 3.00, 4.30, 5.10, 3.80},
    {"baseline 3", 6.00, 6.50, 6.00, 6.20},
    {"baseline 4", 5.20, 6.00, 6.80, 5.80},
    {"baseline 5", 4.00, 5.30, 6.00, 4.80},
    {"baseline 6", 3.10, 3.10, 6.30, 3.80},
    {"baseline avg", 4.13, 4.95, 5.95, 4.77},
}};

Outcome TableAggregation() {
  std::string violations;
  double worst_ours = 0.0;
  for (std::size_t r = 0; r < kTableRows.size(); ++r) {
    const auto& row = kTableRows[r];
    double direct = ev::OverallFromCategories(row.core, row.writing, row.depth);
    // Spread each category evenly over its dimensions; Aggregate must give
    // back the same category means and overall.
    std::array<std::optional<double>, ev::kDimensionCount> scores;
    for (std::size_t i = 0; i < ev::kDimensionCount; ++i) {
      switch (ev::Rubric()[i].category) {
        case ev::Category::kCore: scores[i] = row.core; break;
        case ev::Category::kWriting: scores[i] = row.writing; break;
        case ev::Category::kDepth: scores[i] = row.depth; break;
      }
    }
    auto agg = ev::Aggregate(scores);
    if (std::abs(agg.overall - direct) > 1e-9) {
      return {false, fmt::format("{}: Aggregate {} != direct {}", row.label, agg.overall, direct)};
    }
    double err = std::abs(direct - row.overall);
    if (r < 7) worst_ours = std::max(worst_ours, err);
    if (err > 0.015) {
      violations += fmt::format("; {} gives {:.3f}, table says {:.2f}", row.label, direct,
                                row.overall);
    }
  }
  return {violations.empty(),
          fmt::format("system rows max |error| {:.4f}{}", worst_ours, violations)};
}

// ---------------------------------------------------------------- 2

Outcome SilhouetteOracle() {
  std::mt19937_64 rng(2);
  double worst = 0.0;
  for (int inst = 0; inst < 50; ++inst) {
    int k = std::uniform_int_distribution<int>(2, 6)(rng);
    int n = std::uniform_int_distribution<int>(k + 1, 60)(rng);
    int d = std::uniform_int_distribution<int>(1, 10)(rng);
    std::vector<std::vector<double>> rows(n, std::vector<double>(d));
    std::normal_distribution<double> g(0.0, 1.0);
    for (auto& r : rows) {
      for (auto& v : r) v = g(rng);
    }
    std::vector<int> labels(n);
    for (int i = 0; i < n; ++i) labels[i] = i < k ? i : std::uniform_int_distribution<int>(0, k - 1)(rng);
    std::shuffle(labels.begin(), labels.end(), rng);
    auto got = cl::Silhouette(cl::FromRows(rows), labels);
    auto want = oracle::SilhouettePerPoint(rows, labels);
    worst = std::max(worst, std::abs(got.score - oracle::Silhouette(rows, labels)));
    for (int i = 0; i < n; ++i) worst = std::max(worst, std::abs(got.per_point[i] - want[i]));
  }
  return {worst <= 1e-9, fmt::format("50 instances, max |diff| {:.2e}", worst)};
}

// ---------------------------------------------------------------- 3

Outcome KRecovery() {
  int hits = 0;
  std::vector<int> found;
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    auto blobs = ts::MakeBlobs(7, 15, 8, 1.0, 10.0, seed);
    auto sel = cl::SelectK(blobs.x, 5, 15, seed);
    found.push_back(sel.k_star);
    if (sel.k_star == 7) ++hits;
  }
  std::string ks;
  for (int k : found) ks += std::to_string(k) + " ";
  return {hits >= 19, fmt::format("k*=7 on {}/20 seeds (k*: {})", hits, ks)};
}

// ---------------------------------------------------------------- 4

Outcome ConfidenceStrength() {
  std::mt19937_64 rng(4);
  std::normal_distribution<double> g(0.0, 1.0);
  double worst = 0.0;
  for (int inst = 0; inst < 50; ++inst) {
    int k = std::uniform_int_distribution<int>(2, 6)(rng);
    int n = std::uniform_int_distribution<int>(k, 40)(rng);
    int d = std::uniform_int_distribution<int>(2, 10)(rng);
    std::vector<std::vector<double>> rows(n, std::vector<double>(d));
    std::vector<std::vector<double>> cents(k, std::vector<double>(d));
    for (auto& r : rows) {
      for (auto& v : r) v = g(rng);
    }
    for (auto& c : cents) {
      for (auto& v : c) v = g(rng);
    }
    std::vector<int> labels(n);
    for (auto& l : labels) l = std::uniform_int_distribution<int>(0, k - 1)(rng);
    auto x = cl::FromRows(rows);
    auto c = cl::FromRows(cents);
    for (int i = 0; i < n; ++i) {
      double got = cl::Confidence(x, labels, c, i);
      worst = std::max(worst, std::abs(got - oracle::Confidence(rows[i], cents, labels[i])));
    }
    for (int a = 0; a < k; ++a) {
      for (int b = 0; b < k; ++b) {
        double got = cl::InterclusterStrength(c, a, b);
        worst = std::max(worst, std::abs(got - oracle::Cosine(cents[a], cents[b])));
      }
    }
  }
  std::string overlapping = cl::RelationshipLabelName(cl::LabelStrength(0.842));
  std::string complementary = cl::RelationshipLabelName(cl::LabelStrength(0.687));
  bool labels_ok = overlapping == "overlapping" && complementary == "complementary";
  return {worst <= 1e-12 && labels_ok,
          fmt::format("max |diff| {:.2e}; 0.842 -> {}, 0.687 -> {}", worst, overlapping,
                      complementary)};
}

// ---------------------------------------------------------------- 5

Outcome Tfidf() {
  const std::vector<std::string> vocab = {
      "planner", "memory", "retrieval", "agents", "tools", "reward", "policy", "graph",
      "vision", "robot", "benchmark", "dialogue", "critic", "search", "verifier"};
  std::mt19937_64 rng(5);
  const int k = 4;
  std::vector<std::vector<std::vector<std::string>>> words(k);
  std::vector<std::vector<std::string>> docs(k);
  for (int i = 0; i < 30; ++i) {
    int c = i % k;
    int len = std::uniform_int_distribution<int>(3, 9)(rng);
    std::vector<std::string> w;
    // "agents" appears in every cluster's first document.
    if (i < k) w.push_back("agents");
    for (int j = 0; j < len; ++j) {
      w.push_back(vocab[std::uniform_int_distribution<std::size_t>(0, vocab.size() - 1)(rng)]);
    }
    words[c].push_back(w);
    docs[c].push_back(litpipe::text::Join(w, " "));
  }
  auto got = cl::TfidfTerms(docs, 0);
  double worst = 0.0;
  bool ubiquitous_zero = true;
  std::size_t compared = 0;
  for (int c = 0; c < k; ++c) {
    auto want = oracle::TfidfScores(words, c);
    if (want.size() != got[c].size()) {
      return {false, fmt::format("cluster {}: {} terms, oracle {}", c, got[c].size(), want.size())};
    }
    for (const auto& t : got[c]) {
      auto it = want.find(t.term);
      if (it == want.end()) return {false, "unexpected term " + t.term};
      worst = std::max(worst, std::abs(t.score - it->second));
      ++compared;
      if (t.term == "agents" && t.score != 0.0) ubiquitous_zero = false;
    }
  }
  return {worst <= 1e-12 && ubiquitous_zero,
          fmt::format("30 docs, {} terms, max |diff| {:.2e}, shared term score 0: {}", compared,
                      worst, ubiquitous_zero ? "yes" : "no")};
}

// ---------------------------------------------------------------- 6

Outcome Dedup() {
  auto records = nlohmann::json::parse(
      litpipe::files::ReadFile(ts::FixtureDir() / "titles200.json"));
  std::vector<acq::Paper> papers;
  for (const auto& r : records) {
    auto p = ts::MakePaper(r.at("id"), r.at("title"), {"A. Author"}, 2023, r.at("citations"));
    p.source = *acq::SourceFromName(r.at("source").get<std::string>());
    papers.push_back(p);
  }
  auto kept = acq::Deduplicate(papers, 0.90);
  double worst = 0.0;
  std::size_t pairs = 0;
  for (std::size_t i = 0; i < kept.size(); ++i) {
    for (std::size_t j = i + 1; j < kept.size(); ++j) {
      double s = oracle::LevenshteinSimilarity(litpipe::text::NormalizeForMatch(kept[i].title),
                                               litpipe::text::NormalizeForMatch(kept[j].title));
      worst = std::max(worst, s);
      ++pairs;
    }
  }
  bool idempotent = acq::Deduplicate(kept, 0.90) == kept;
  bool removed = kept.size() < papers.size();
  return {worst < 0.90 && idempotent && removed,
          fmt::format("200 -> {} titles, {} pairs scanned, max similarity {:.4f}, idempotent: {}",
                      kept.size(), pairs, worst, idempotent ? "yes" : "no")};
}

// ---------------------------------------------------------------- 7

std::string CoverageFor(std::size_t cited, std::size_t corpus_size) {
  auto corpus = ts::DistinctAuthorCorpus(corpus_size);
  std::string survey = "# Survey\n\n";
  for (std::size_t i = 0; i < cited; ++i) {
    survey += "Prior work examined this setting " + litpipe::writer::RenderKey(corpus[i]) + ".\n";
  }
  return fmt::format("{:.4f}", ev::CitationCoverage(survey, corpus));
}

Outcome Coverage() {
  auto a = CoverageFor(80, 100);
  auto b = CoverageFor(80, 1334);
  return {a == "0.8000" && b == "0.0600", fmt::format("80/100 -> {}, 80/1334 -> {}", a, b)};
}

// ---------------------------------------------------------------- 8

Outcome Cache() {
  using std::chrono::minutes;
  using std::chrono::hours;
  litpipe::ManualClock clock(litpipe::ParseUtc("2026-01-15T00:00:00Z"));
  infra::TtlLruCache early(infra::ApiStoreLimits());
  infra::TtlLruCache late(infra::ApiStoreLimits());
  early.Put("q", "v", clock.Now());
  late.Put("q", "v", clock.Now());
  clock.Advance(hours(23) + minutes(59));
  bool hit = early.Get("q", clock.Now()).has_value();
  clock.Advance(minutes(2));
  bool miss = !late.Get("q", clock.Now()).has_value();

  const std::size_t capacity = 8;
  const int ttl = 100;
  infra::TtlLruCache cache({capacity, std::nullopt, litpipe::Seconds(ttl)});
  oracle::LruModel model(capacity, ttl);
  std::mt19937_64 rng(8);
  const auto t0 = litpipe::ParseUtc("2026-01-15T00:00:00Z");
  int now = 0;
  int mismatches = 0;
  for (int op = 0; op < 1000; ++op) {
    now += std::uniform_int_distribution<int>(0, 9)(rng);
    auto tp = t0 + std::chrono::seconds(now);
    std::string key = "k" + std::to_string(std::uniform_int_distribution<int>(0, 11)(rng));
    if (std::uniform_int_distribution<int>(0, 1)(rng)) {
      std::string value = "v" + std::to_string(op);
      cache.Put(key, value, tp);
      model.Put(key, value, now);
    } else if (cache.Get(key, tp) != model.Get(key, now)) {
      ++mismatches;
    }
    if (cache.size() != model.size()) ++mismatches;
    for (int i = 0; i < 12; ++i) {
      std::string k = "k" + std::to_string(i);
      if (cache.Contains(k) != model.Contains(k)) ++mismatches;
    }
  }
  return {hit && miss && mismatches == 0,
          fmt::format("23h59m {}, 24h01m {}, 1000 ops with {} mismatches", hit ? "hit" : "miss",
                      miss ? "miss" : "hit", mismatches)};
}

// ---------------------------------------------------------------- 9

Outcome Backoff() {
  infra::BackoffPolicy policy;
  infra::SeededUniform uniform(9);
  int violations = 0;
  double max_seen = 0.0;
  for (int draw = 0; draw < 10000; ++draw) {
    for (int attempt = 1; attempt <= 5; ++attempt) {
      auto d = infra::NextDelay(policy, attempt, uniform);
      double cap = oracle::BackoffCap(1.0, 2.0, 60.0, attempt);
      if (!d || d->count() < 0.0 || d->count() > cap) ++violations;
      if (d) max_seen = std::max(max_seen, d->count());
    }
  }
  return {violations == 0,
          fmt::format("50000 samples, {} out of bounds, largest {:.3f}s", violations, max_seen)};
}

// ---------------------------------------------------------------- 10, 11

const std::vector<std::string> kCompared = {pl::kCorpusFile, pl::kClustersFile,
                                            pl::kClusterReportFile, pl::kSurveyFile,
                                            pl::kEvaluationFile};

std::string CompareRuns(const std::filesystem::path& a, const std::filesystem::path& b) {
  for (const auto& f : kCompared) {
    if (!std::filesystem::exists(a / f) || !std::filesystem::exists(b / f)) return f + " missing";
    if (!ts::SameBytes(a / f, b / f)) return f + " differs";
  }
  return "";
}

Outcome Determinism(const ts::TempDir& first, const ts::TempDir& second) {
  auto r1 = pl::Run(ts::MockConfig(first.path()));
  auto r2 = pl::Run(ts::MockConfig(second.path()));
  if (r1.exit_code != 0 || r2.exit_code != 0) {
    return {false, fmt::format("exit codes {} and {}: {}{}", r1.exit_code, r2.exit_code, r1.error,
                               r2.error)};
  }
  auto diff = CompareRuns(first.path(), second.path());
  return {diff.empty(), diff.empty() ? "5 artifacts byte-identical across two runs" : diff};
}

Outcome CrashResume(const ts::TempDir& reference) {
  ts::TempDir dir;
  auto config = ts::MockConfig(dir.path());
  std::fflush(nullptr);
  pid_t child = ::fork();
  if (child < 0) return {false, "fork failed"};
  if (child == 0) {
    pl::RunHooks hooks;
    hooks.after_checkpoint = [](pl::StageId stage) {
      if (stage == pl::StageId::kCluster) ::kill(::getpid(), SIGKILL);
    };
    pl::Run(config, hooks);
    ::_exit(0);  // reached only if the kill did not happen
  }
  int status = 0;
  ::waitpid(child, &status, 0);
  if (!WIFSIGNALED(status) || WTERMSIG(status) != SIGKILL) {
    return {false, "child was not killed at the clustering checkpoint"};
  }
  if (std::filesystem::exists(dir / pl::kSurveyFile)) {
    return {false, "survey written before the kill"};
  }
  auto resumed = pl::Run(config);
  if (resumed.exit_code != 0) return {false, "resume failed: " + resumed.error};
  std::string statuses;
  bool skipped_ok = true;
  for (const auto& s : resumed.stages) {
    statuses += std::string(pl::StageIdName(s.stage)) + "=" +
                std::string(pl::StageStatusName(s.status)) + " ";
    bool before = s.stage <= pl::StageId::kCluster;
    auto want = before ? pl::StageStatus::kSkipped : pl::StageStatus::kCompleted;
    if (s.status != want) skipped_ok = false;
  }
  auto diff = CompareRuns(reference.path(), dir.path());
  return {skipped_ok && diff.empty(),
          fmt::format("{}; {}", statuses, diff.empty() ? "identical to uninterrupted run" : diff)};
}

// ---------------------------------------------------------------- 12

Outcome ReportGolden() {
  const std::vector<std::string> themes = {
      "planning", "memory", "tool use", "reasoning", "multi-agent debate",
      "web navigation", "code generation", "medical agents", "evaluation benchmarks"};
  acq::Corpus corpus;
  corpus.topic = "LLM agents";
  for (int i = 0; i < 100; ++i) {
    const auto& theme = themes[i % themes.size()];
    corpus.papers.push_back(ts::MakePaper(
        "g" + std::to_string(i),
        fmt::format("{} for language model agents, study {}", theme, i),
        {"B. " + ts::UniqueFamilyName(i)}, 2021 + i % 5, 5 + i % 17,
        fmt::format("We study {} in language model agents. Our {} method improves {} "
                    "across tasks, and we analyse {} failure modes in detail with ablations "
                    "and released code.",
                    theme, theme, theme, theme)));
  }
  litpipe::embedding::MockEmbeddingProvider provider(42);
  auto embeddings = litpipe::embedding::EmbedCorpus(corpus.papers, provider, nullptr, nullptr);
  cl::ClusterOptions options;
  options.k_min = 9;
  options.k_max = 9;
  options.seed = 42;
  auto result = cl::ClusterCorpus(corpus, embeddings, options);
  // Pin the fixture's validity indices, then pass through the on-disk form.
  result.diagnostics.silhouette = 0.055;
  result.diagnostics.calinski_harabasz = 4.1;
  result.diagnostics.davies_bouldin = 2.591;
  auto loaded = cl::ClusteringFromJson(nlohmann::json::parse(cl::ClusteringToJson(result).dump()));
  auto md = cl::RenderClusterReport(loaded, corpus.papers, "2026-01-15T00:00:00Z");
  const std::vector<std::string> lines = {
      "- **Total Papers**: 100\n",
      "- **Number of Clusters**: 9\n",
      "- **Average Cluster Size**: 11.1\n",
      "- **Silhouette Score**: 0.055 (range: -1 to 1, higher is better)\n",
      "- **Calinski-Harabasz Score**: 4.1 (higher is better)\n",
      "- **Davies-Bouldin Score**: 2.591 (lower is better)\n",
  };
  for (const auto& l : lines) {
    if (md.find(l) == std::string::npos) return {false, "missing line: " + l};
  }
  return {true, "6 metric lines match"};
}

}  // namespace

int main() {
  ts::TempDir run_a;
  ts::TempDir run_b;
  const std::vector<Criterion> criteria = {
      {1, "aggregation arithmetic", 1000, TableAggregation},
      {2, "silhouette oracle", 10000, SilhouetteOracle},
      {3, "K recovery", 30000, KRecovery},
      {4, "confidence and strength", 0, ConfidenceStrength},
      {5, "TF-IDF", 0, Tfidf},
      {6, "deduplication", 0, Dedup},
      {7, "coverage arithmetic", 0, Coverage},
      {8, "cache TTL and LRU", 0, Cache},
      {9, "backoff bounds", 0, Backoff},
      {10, "end-to-end determinism", 60000, [&] { return Determinism(run_a, run_b); }},
      {11, "crash and resume", 0, [&] { return CrashResume(run_a); }},
      {12, "report format", 0, ReportGolden},
  };
  // Criteria that cannot pass on their reference data. They still print
  // FAIL; the exit status only tracks everything else, and flips if one of
  // these starts passing so the list gets revisited.
  const std::set<int> known_red = {1};
  int failures = 0;
  int unexpected = 0;
  for (const auto& c : criteria) {
    auto start = std::chrono::steady_clock::now();
    Outcome out;
    try {
      out = c.body();
    } catch (const std::exception& e) {
      out = {false, std::string("exception: ") + e.what()};
    }
    double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
                    .count();
    if (c.budget_ms > 0 && ms > c.budget_ms) {
      out.pass = false;
      out.detail += fmt::format("; over the {:.0f} ms budget", c.budget_ms);
    }
    bool red_expected = known_red.count(c.id) > 0;
    if (!out.pass) ++failures;
    if (out.pass == red_expected) ++unexpected;
    std::printf("%s  %2d %-24s %s (%.1f ms)%s\n", out.pass ? "PASS" : "FAIL", c.id,
                c.name.c_str(), out.detail.c_str(), ms,
                red_expected && !out.pass ? " [known red]" : "");
    std::fflush(stdout);
  }
  std::printf("%d/%zu criteria passed, %d unexpected\n",
              static_cast<int>(criteria.size()) - failures, criteria.size(), unexpected);
  return unexpected == 0 ? 0 : 1;
}

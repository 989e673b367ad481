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

#include "acquisition/acquire.hpp"

#include <algorithm>
#include <future>
#include <numeric>
#include <set>

#include "acquisition/dedup.hpp"
#include "acquisition/normalize.hpp"
#include "acquisition/query_expansion.hpp"
#include "common/error.hpp"
#include "common/text.hpp"

namespace litpipe::acquisition {
namespace {

struct TaskResult {
  std::vector<RawPaperBatch> pages;
  SourceReport report;
  std::size_t parse_errors = 0;
  std::vector<std::string> warnings;
};

TaskResult RunTask(PaperSource& source, const std::string& query, const std::string& topic,
                   const AcquisitionConfig& config, infra::RateManager& rate,
                   infra::ApiCache* cache) {
  TaskResult out;
  auto alternatives = AlternativeQueries(query, topic);
  std::string page;
  for (std::size_t n = 0; n < std::max<std::size_t>(1, config.max_pages_per_query); ++n) {
    ++out.report.calls;
    try {
      auto fetched = FetchSource(source, query, page, rate, cache, alternatives);
      out.report.retries += static_cast<std::size_t>(fetched.retries);
      out.report.cache_hits += fetched.from_cache && !fetched.stale;
      out.report.stale_hits += fetched.stale;
      out.pages.push_back(std::move(fetched.batch));
      if (!out.pages.back().next_page) break;
      page = *out.pages.back().next_page;
    } catch (const Error& e) {
      if (e.code() == ErrorCode::kParse) {
        ++out.parse_errors;
        out.warnings.push_back(std::string(SourceName(source.source())) + " '" + query +
                               "': malformed payload skipped: " + e.what());
      } else {
        ++out.report.failures;
        out.warnings.push_back(std::string(SourceName(source.source())) + " '" + query +
                               "': " + e.what());
      }
      break;
    }
  }
  return out;
}

}  // namespace

std::vector<std::string> AlternativeQueries(const std::string& query, const std::string& topic) {
  std::vector<std::string> out;
  std::vector<std::string> words;
  for (auto& w : text::SplitWhitespace(query)) {
    std::erase_if(w, [](char c) { return c == '(' || c == ')' || c == '"'; });
    if (w.empty() || w == "AND" || w == "OR") continue;
    words.push_back(w);
  }
  auto simplified = text::Join(words, " ");
  if (!simplified.empty() && simplified != query) out.push_back(simplified);
  if (topic != query && topic != simplified) out.push_back(topic);
  return out;
}

FetchOutcome FetchSource(PaperSource& source, const std::string& query,
                         const std::string& page_token, infra::RateManager& rate,
                         infra::ApiCache* cache, const std::vector<std::string>& alternatives) {
  const std::string name(SourceName(source.source()));
  if (query.empty()) Fail(ErrorCode::kInvalidInput, "query must be non-empty");
  const auto key = infra::ApiCache::Key(name, query, page_token);
  FetchOutcome out;
  if (cache) {
    if (auto hit = cache->GetFresh(key, rate.clock().Now())) {
      try {
        out.batch = BatchFromJson(nlohmann::json::parse(*hit));
        out.from_cache = true;
        return out;
      } catch (const std::exception&) {
        // Unreadable cache entry: refetch.
      }
    }
  }

  std::vector<std::string> inputs{query};
  inputs.insert(inputs.end(), alternatives.begin(), alternatives.end());
  infra::RetryStats stats;
  try {
    out.batch = rate.Call<std::string>(
        name, [&](const std::string& q) { return source.Fetch(q, page_token); },
        std::span<const std::string>(inputs), &stats);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::kParse || !cache) throw;
    auto stale = cache->GetStale(key);
    if (!stale) throw;
    out.batch = BatchFromJson(nlohmann::json::parse(*stale));
    out.from_cache = true;
    out.stale = true;
    out.retries = stats.retries;
    return out;
  }
  out.retries = stats.retries;
  out.alternative_index = stats.alternative_index;
  if (cache) {
    cache->Put(key, BatchToJson(out.batch).dump(),
               {{"source", name}, {"query", query}, {"page", page_token}}, rate.clock().Now());
  }
  return out;
}

AcquisitionResult Acquire(const std::string& raw_topic, const AcquisitionConfig& config,
                          const AcquisitionContext& context) {
  const std::string topic = NormalizeTopic(raw_topic);
  if (context.sources.empty()) {
    Fail(ErrorCode::kAcquisitionFailed, "no paper source is configured");
  }
  if (!context.rate) Fail(ErrorCode::kInvalidInput, "acquisition needs a rate manager");

  AcquisitionResult result;
  auto& corpus = result.corpus;
  auto& report = result.report;
  corpus.topic = topic;
  corpus.created_at = FormatUtc(context.now);
  corpus.queries = ExpandQueries(topic, context.query_generator);

  // Task (query i, source s) lives at i * |sources| + s; results merge in
  // that order whatever the completion order was.
  const auto& queries = corpus.queries.queries;
  const std::size_t n_sources = context.sources.size();
  std::vector<TaskResult> results(queries.size() * n_sources);
  const std::size_t width = std::max<std::size_t>(1, config.max_concurrency);
  for (std::size_t begin = 0; begin < results.size(); begin += width) {
    std::vector<std::future<TaskResult>> inflight;
    std::size_t end = std::min(results.size(), begin + width);
    for (std::size_t t = begin; t < end; ++t) {
      auto* source = context.sources[t % n_sources];
      const auto& query = queries[t / n_sources];
      inflight.push_back(std::async(width == 1 ? std::launch::deferred : std::launch::async,
                                    [&, source, &query = query] {
                                      return RunTask(*source, query, topic, config,
                                                     *context.rate, context.cache);
                                    }));
    }
    for (std::size_t t = begin; t < end; ++t) results[t] = inflight[t - begin].get();
  }

  std::vector<Paper> normalized;
  std::size_t successful_pages = 0;
  for (std::size_t t = 0; t < results.size(); ++t) {
    auto& r = results[t];
    auto source = context.sources[t % n_sources]->source();
    auto& sr = report.sources[std::string(SourceName(source))];
    sr.calls += r.report.calls;
    sr.failures += r.report.failures;
    sr.cache_hits += r.report.cache_hits;
    sr.stale_hits += r.report.stale_hits;
    sr.retries += r.report.retries;
    report.parse_errors += r.parse_errors;
    for (auto& w : r.warnings) report.warnings.push_back(std::move(w));
    for (const auto& page : r.pages) {
      ++successful_pages;
      corpus.stats.fetched += page.records.size();
      for (const auto& rec : page.records) {
        auto n = NormalizeRecord(rec, source);
        if (n.paper) {
          normalized.push_back(std::move(*n.paper));
        } else if (n.rejection == "no-title") {
          ++report.rejected_no_title;
        } else {
          ++report.rejected_no_year;
        }
      }
    }
  }

  bool any_stale = false;
  for (auto& [name, sr] : report.sources) {
    sr.available = sr.failures < sr.calls || sr.calls == 0;
    any_stale = any_stale || sr.stale_hits > 0;
    if (!sr.available) report.warnings.push_back("source unavailable: " + name);
  }
  corpus.degraded = any_stale || std::any_of(report.sources.begin(), report.sources.end(),
                                             [](const auto& kv) { return !kv.second.available; });
  if (successful_pages == 0) {
    Fail(ErrorCode::kAcquisitionFailed,
         "all sources unavailable and no cached results for topic '" + topic + "'");
  }

  // The same record reached through several queries is one paper.
  std::vector<Paper> unique;
  std::set<std::string> seen_ids;
  for (auto& p : normalized) {
    if (seen_ids.insert(p.id).second) unique.push_back(std::move(p));
  }
  auto deduped = Deduplicate(unique, config.title_similarity_threshold);
  corpus.stats.deduplicated = deduped.size();

  auto filtered = FilterCorpus(deduped, config, ToCivil(context.now));
  report.filter_rejections = filtered.rejections;
  corpus.stats.filtered = filtered.kept.size();
  if (filtered.kept.empty()) report.warnings.push_back("no papers survived filtering");

  auto& kept = filtered.kept;
  if (kept.size() > config.target_paper_count) {
    std::vector<std::size_t> order(kept.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      const auto& pa = kept[a];
      const auto& pb = kept[b];
      if (pa.citation_count != pb.citation_count) return pa.citation_count > pb.citation_count;
      if (pa.year != pb.year) return pa.year > pb.year;
      return pa.id < pb.id;
    });
    order.resize(config.target_paper_count);
    std::sort(order.begin(), order.end());
    std::vector<Paper> capped;
    for (auto i : order) capped.push_back(std::move(kept[i]));
    kept = std::move(capped);
  }
  corpus.papers = std::move(kept);
  corpus.stats.final = corpus.papers.size();
  return result;
}

}  // namespace litpipe::acquisition

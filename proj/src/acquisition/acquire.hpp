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
#include <string>
#include <vector>

#include "acquisition/filter.hpp"
#include "acquisition/sources.hpp"
#include "acquisition/types.hpp"
#include "infra/api_cache.hpp"
#include "infra/rate_manager.hpp"

namespace litpipe::infra {
class TextGenerator;
}

namespace litpipe::acquisition {

struct FetchOutcome {
  RawPaperBatch batch;
  int retries = 0;
  std::size_t alternative_index = 0;
  bool from_cache = false;
  bool stale = false;
};

// One page for one query through the rate manager and the API cache.
// `alternatives` are fallback formulations tried after the retry budget for
// the query is spent. A fresh cache hit skips the network; when the network
// fails and a stale copy exists, the stale copy is returned with stale=true.
FetchOutcome FetchSource(PaperSource& source, const std::string& query,
                         const std::string& page_token, infra::RateManager& rate,
                         infra::ApiCache* cache, const std::vector<std::string>& alternatives = {});

// Fallback formulations for a failing query: operators and brackets
// stripped, then the bare topic.
std::vector<std::string> AlternativeQueries(const std::string& query, const std::string& topic);

struct SourceReport {
  std::size_t calls = 0;
  std::size_t failures = 0;
  std::size_t cache_hits = 0;
  std::size_t stale_hits = 0;
  std::size_t retries = 0;
  bool available = true;
};

struct AcquisitionReport {
  std::map<std::string, SourceReport> sources;
  std::size_t rejected_no_title = 0;
  std::size_t rejected_no_year = 0;
  std::size_t parse_errors = 0;
  FilterRejections filter_rejections;
  std::vector<std::string> warnings;
};

struct AcquisitionResult {
  Corpus corpus;
  AcquisitionReport report;
};

struct AcquisitionContext {
  std::vector<PaperSource*> sources;
  infra::RateManager* rate = nullptr;
  infra::ApiCache* cache = nullptr;
  infra::TextGenerator* query_generator = nullptr;
  // Run timestamp; drives the default year ceiling and recency rule.
  TimePoint now;
};

// expand -> fetch (every query x every source) -> normalize -> dedup ->
// filter -> cap at target_paper_count. Continues in degraded mode when a
// source is down; throws Error(kAcquisitionFailed) when nothing at all could
// be fetched or served from cache.
AcquisitionResult Acquire(const std::string& topic, const AcquisitionConfig& config,
                          const AcquisitionContext& context);

}  // namespace litpipe::acquisition

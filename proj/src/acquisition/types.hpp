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

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace litpipe::acquisition {

enum class Source { kSemanticScholar = 0, kArxiv = 1 };

std::string_view SourceName(Source source);
std::optional<Source> SourceFromName(std::string_view name);

struct Paper {
  std::string id;
  std::string title;
  std::vector<std::string> authors;
  int year = 0;
  std::string abstract;
  std::int64_t citation_count = 0;
  std::optional<std::string> venue;
  Source source = Source::kSemanticScholar;
  std::string source_id;
  std::optional<std::string> url;

  bool operator==(const Paper&) const = default;
};

enum class ExpansionRule { kVerbatim, kSynonym, kRelatedTerm, kBooleanCompound, kAcronym };

std::string_view RuleName(ExpansionRule rule);

struct QuerySet {
  std::vector<std::string> queries;
  std::vector<ExpansionRule> provenance;  // parallel to queries
};

struct CorpusStats {
  std::size_t fetched = 0;
  std::size_t deduplicated = 0;
  std::size_t filtered = 0;
  std::size_t final = 0;

  bool operator==(const CorpusStats&) const = default;
};

struct Corpus {
  std::string topic;
  std::vector<Paper> papers;
  CorpusStats stats;
  std::string created_at;
  QuerySet queries;
  // Set when a source was unavailable or stale cached responses were used.
  bool degraded = false;
};

struct AcquisitionConfig {
  int year_min = 2020;
  // nullopt = current calendar year at run time.
  std::optional<int> year_max;
  // nullopt = adaptive: 0 for papers at most recent_months old, else 1.
  std::optional<std::int64_t> min_citations;
  int recent_months = 18;
  double title_similarity_threshold = 0.90;
  std::size_t target_paper_count = 150;
  std::size_t min_abstract_chars = 200;
  std::size_t records_per_query = 100;
  std::size_t max_pages_per_query = 1;
  std::size_t max_concurrency = 4;
};

}  // namespace litpipe::acquisition

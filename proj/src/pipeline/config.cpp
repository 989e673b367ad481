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

#include "pipeline/config.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <chrono>
#include <cstdlib>

#include "common/clock.hpp"
#include "common/error.hpp"
#include "common/files.hpp"
#include "common/sha256.hpp"
#include "common/text.hpp"

namespace litpipe::pipeline {
namespace {

constexpr std::array<std::string_view, kStageCount> kStageNames = {"acquire", "embed", "cluster",
                                                                   "write", "evaluate"};

[[noreturn]] void ConfigError(const std::string& message) { Fail(ErrorCode::kConfig, message); }

template <typename T>
T ParseInteger(std::string_view key, std::string_view value) {
  T out{};
  auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
  if (ec != std::errc() || ptr != value.data() + value.size()) {
    ConfigError(std::string(key) + ": not an integer: '" + std::string(value) + "'");
  }
  return out;
}

double ParseDouble(std::string_view key, std::string_view value) {
  std::string s(value);
  std::size_t used = 0;
  double out = 0.0;
  try {
    out = std::stod(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (s.empty() || used != s.size()) {
    ConfigError(std::string(key) + ": not a number: '" + s + "'");
  }
  return out;
}

std::optional<std::string> Env(const char* name) {
  const char* v = std::getenv(name);
  if (!v || !*v) return std::nullopt;
  return std::string(v);
}

}  // namespace

std::string_view StageIdName(StageId stage) { return kStageNames[static_cast<int>(stage)]; }

std::optional<StageId> StageIdFromName(std::string_view name) {
  for (int i = 0; i < kStageCount; ++i) {
    if (kStageNames[i] == name) return static_cast<StageId>(i);
  }
  return std::nullopt;
}

std::vector<StageId> ParseStageList(std::string_view list) {
  std::vector<StageId> out;
  std::string item;
  auto flush = [&] {
    auto name = text::Trim(item);
    item.clear();
    if (name.empty()) return;
    auto stage = StageIdFromName(name);
    if (!stage) ConfigError("unknown stage '" + name + "' (acquire, embed, cluster, write, evaluate)");
    if (std::find(out.begin(), out.end(), *stage) == out.end()) out.push_back(*stage);
  };
  for (char c : list) {
    if (c == ',') {
      flush();
    } else {
      item.push_back(c);
    }
  }
  flush();
  if (out.empty()) ConfigError("empty stage list");
  std::sort(out.begin(), out.end());
  return out;
}

bool ProviderSelection::AllOffline() const {
  return embedding == EmbeddingChoice::kMock && generation == GenerationChoice::kMock &&
         judge == GenerationChoice::kMock && search_fixture.has_value();
}

void ParseProviderSpec(std::string_view spec, ProviderSelection& selection) {
  auto trimmed = text::Trim(spec);
  if (trimmed == "mock") {
    selection.embedding = EmbeddingChoice::kMock;
    selection.generation = GenerationChoice::kMock;
    selection.judge = GenerationChoice::kMock;
    return;
  }
  std::size_t start = 0;
  while (start <= trimmed.size()) {
    auto end = trimmed.find(',', start);
    if (end == std::string::npos) end = trimmed.size();
    auto pair = text::Trim(std::string_view(trimmed).substr(start, end - start));
    start = end + 1;
    if (pair.empty()) continue;
    auto eq = pair.find('=');
    if (eq == std::string::npos) ConfigError("provider entry '" + pair + "' is not key=value");
    auto key = text::Trim(pair.substr(0, eq));
    auto value = text::Trim(pair.substr(eq + 1));
    if (key == "embedding") {
      if (value == "mock") {
        selection.embedding = EmbeddingChoice::kMock;
      } else if (value == "sidecar") {
        selection.embedding = EmbeddingChoice::kSidecar;
      } else {
        ConfigError("embedding provider must be mock or sidecar, got '" + value + "'");
      }
    } else if (key == "generation" || key == "judge") {
      GenerationChoice choice;
      if (value == "mock") {
        choice = GenerationChoice::kMock;
      } else if (value == "external") {
        choice = GenerationChoice::kExternal;
      } else {
        ConfigError(key + " provider must be mock or external, got '" + value + "'");
      }
      (key == "generation" ? selection.generation : selection.judge) = choice;
    } else if (key == "search") {
      if (value == "live") {
        selection.search_fixture.reset();
      } else if (text::StartsWith(value, "fixture:") && value.size() > 8) {
        selection.search_fixture = value.substr(8);
      } else {
        ConfigError("search provider must be live or fixture:<path>, got '" + value + "'");
      }
    } else {
      ConfigError("unknown provider key '" + key + "'");
    }
  }
}

std::string ProviderSpecString(const ProviderSelection& s) {
  std::string out = "embedding=";
  out += s.embedding == EmbeddingChoice::kMock ? "mock" : "sidecar";
  out += ",generation=";
  out += s.generation == GenerationChoice::kMock ? "mock" : "external";
  out += ",judge=";
  out += s.judge == GenerationChoice::kMock ? "mock" : "external";
  out += ",search=";
  out += s.search_fixture ? "fixture:" + s.search_fixture->string() : std::string("live");
  return out;
}

Endpoints EndpointsFromEnvironment() {
  Endpoints e;
  e.semantic_scholar_key = Env("LITPIPE_S2_API_KEY");
  e.generation = Env("LITPIPE_GEN_ENDPOINT");
  e.embedding = Env("LITPIPE_EMBED_ENDPOINT");
  return e;
}

std::filesystem::path PipelineConfig::CacheRoot() const {
  return cache_dir ? *cache_dir : out_dir / "cache";
}

void SetOption(PipelineConfig& c, std::string_view key, std::string_view value) {
  std::string v(value);
  if (key == "topic") {
    c.topic = v;
  } else if (key == "out") {
    c.out_dir = v;
  } else if (key == "seed") {
    c.seed = ParseInteger<std::uint64_t>(key, v);
  } else if (key == "max-papers") {
    c.acquisition.target_paper_count = ParseInteger<std::size_t>(key, v);
  } else if (key == "year-min") {
    c.acquisition.year_min = ParseInteger<int>(key, v);
  } else if (key == "year-max") {
    c.acquisition.year_max = ParseInteger<int>(key, v);
  } else if (key == "min-citations") {
    c.acquisition.min_citations = ParseInteger<std::int64_t>(key, v);
  } else if (key == "similarity-threshold") {
    c.acquisition.title_similarity_threshold = ParseDouble(key, v);
  } else if (key == "k-min") {
    c.k_min = ParseInteger<int>(key, v);
  } else if (key == "k-max") {
    c.k_max = ParseInteger<int>(key, v);
  } else if (key == "word-budget") {
    c.word_budget = ParseInteger<std::size_t>(key, v);
  } else if (key == "coverage-min") {
    c.coverage_min = ParseDouble(key, v);
  } else if (key == "coverage-target") {
    c.coverage_target = ParseDouble(key, v);
  } else if (key == "providers") {
    ParseProviderSpec(v, c.providers);
  } else if (key == "fixture") {
    c.providers.search_fixture = v;
  } else if (key == "stages") {
    c.stages = ParseStageList(v);
  } else if (key == "cache-dir") {
    c.cache_dir = v;
  } else if (key == "timestamp") {
    c.timestamp = v;
  } else if (key == "concurrency") {
    c.max_concurrency = ParseInteger<std::size_t>(key, v);
    if (c.max_concurrency == 0) ConfigError("concurrency must be at least 1");
  } else if (key == "gen-endpoint") {
    c.endpoints.generation = v;
  } else if (key == "embed-endpoint") {
    c.endpoints.embedding = v;
  } else if (key == "embed-model") {
    c.endpoints.embedding_model = v;
  } else if (key == "s2-api-key") {
    c.endpoints.semantic_scholar_key = v;
  } else {
    ConfigError("unknown option '" + std::string(key) + "'");
  }
}

nlohmann::ordered_json Fingerprint(const PipelineConfig& c) {
  const auto& a = c.acquisition;
  nlohmann::ordered_json j;
  j["topic"] = c.topic;
  j["seed"] = c.seed;
  j["acquisition"] = {
      {"year_min", a.year_min},
      {"year_max", a.year_max ? nlohmann::ordered_json(*a.year_max) : nlohmann::ordered_json()},
      {"min_citations",
       a.min_citations ? nlohmann::ordered_json(*a.min_citations) : nlohmann::ordered_json()},
      {"recent_months", a.recent_months},
      {"title_similarity_threshold", a.title_similarity_threshold},
      {"target_paper_count", a.target_paper_count},
      {"min_abstract_chars", a.min_abstract_chars},
      {"records_per_query", a.records_per_query},
      {"max_pages_per_query", a.max_pages_per_query},
  };
  j["k_range"] = {c.k_min, c.k_max};
  j["word_budget"] = c.word_budget;
  j["coverage_min"] = c.coverage_min;
  j["coverage_target"] = c.coverage_target;
  j["providers"] = ProviderSpecString(c.providers);
  if (c.providers.search_fixture) {
    j["search_fixture_sha256"] = Sha256Hex(files::ReadFile(*c.providers.search_fixture));
  }
  if (c.providers.embedding == EmbeddingChoice::kSidecar) {
    j["embedding_model"] = c.endpoints.embedding_model;
  }
  return j;
}

std::string ResolveTimestamp(const std::string& configured) {
  if (!configured.empty()) {
    try {
      return FormatUtc(ParseUtc(configured));
    } catch (const Error& e) {
      ConfigError("timestamp: " + std::string(e.what()));
    }
  }
  if (auto epoch = Env("SOURCE_DATE_EPOCH")) {
    auto secs = ParseInteger<std::int64_t>("SOURCE_DATE_EPOCH", *epoch);
    return FormatUtc(TimePoint{std::chrono::seconds(secs)});
  }
  auto now = std::chrono::time_point_cast<std::chrono::seconds>(std::chrono::system_clock::now());
  return FormatUtc(now);
}

}  // namespace litpipe::pipeline

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
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "acquisition/types.hpp"
#include "writer/outline.hpp"

namespace litpipe::pipeline {

enum class StageId { kAcquire = 0, kEmbed, kCluster, kWrite, kEvaluate };
inline constexpr int kStageCount = 5;

std::string_view StageIdName(StageId stage);
std::optional<StageId> StageIdFromName(std::string_view name);

// Comma-separated stage names. Throws Error(kConfig) on an unknown name.
std::vector<StageId> ParseStageList(std::string_view list);

enum class EmbeddingChoice { kMock, kSidecar };
enum class GenerationChoice { kMock, kExternal };

struct ProviderSelection {
  EmbeddingChoice embedding = EmbeddingChoice::kMock;
  GenerationChoice generation = GenerationChoice::kMock;
  GenerationChoice judge = GenerationChoice::kMock;
  // Set = offline fixture file; unset = live scholarly APIs.
  std::optional<std::filesystem::path> search_fixture;

  bool AllOffline() const;
};

// "mock" or comma-separated key=value pairs over embedding=mock|sidecar,
// generation=mock|external, judge=mock|external and search=live|fixture:<path>.
// Unlisted keys keep their current value. Throws Error(kConfig).
void ParseProviderSpec(std::string_view spec, ProviderSelection& selection);
// Inverse of ParseProviderSpec.
std::string ProviderSpecString(const ProviderSelection& selection);

struct Endpoints {
  std::optional<std::string> semantic_scholar_key;
  std::optional<std::string> generation;
  std::optional<std::string> embedding;
  std::string embedding_model = "all-MiniLM-L6-v2";
};

// LITPIPE_S2_API_KEY, LITPIPE_GEN_ENDPOINT, LITPIPE_EMBED_ENDPOINT.
Endpoints EndpointsFromEnvironment();

struct PipelineConfig {
  std::string topic;
  std::filesystem::path out_dir;
  std::uint64_t seed = 42;
  acquisition::AcquisitionConfig acquisition;
  int k_min = 5;
  int k_max = 15;
  std::size_t word_budget = writer::kDefaultWordBudget;
  double coverage_min = 0.50;
  double coverage_target = 0.80;
  ProviderSelection providers;
  Endpoints endpoints;
  // Unset = <out_dir>/cache.
  std::optional<std::filesystem::path> cache_dir;
  // Empty = every stage not already checkpointed.
  std::vector<StageId> stages;
  // ISO-8601 UTC run timestamp. Empty = SOURCE_DATE_EPOCH if set, else now.
  std::string timestamp;
  std::size_t max_concurrency = 4;

  std::filesystem::path CacheRoot() const;
};

// Applies one "key=value" style setting (the names used by the CLI and the
// C API, e.g. "topic", "k-min", "providers"). Throws Error(kConfig).
void SetOption(PipelineConfig& config, std::string_view key, std::string_view value);

// Every setting that influences artifact content. Two configs with equal
// fingerprints produce identical artifacts from identical inputs.
nlohmann::ordered_json Fingerprint(const PipelineConfig& config);

std::string ResolveTimestamp(const std::string& configured);

}  // namespace litpipe::pipeline

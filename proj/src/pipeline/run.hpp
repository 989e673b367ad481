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

#include <functional>
#include <string>
#include <vector>

#include <json.hpp>

#include "pipeline/config.hpp"
#include "pipeline/validate.hpp"

namespace litpipe::pipeline {

inline constexpr int kExitSuccess = 0;
inline constexpr int kExitConfigError = 2;
inline constexpr int kExitStageFailure = 3;

inline constexpr const char* kCorpusFile = "corpus.json";
inline constexpr const char* kEmbeddingsFile = "embeddings.bin";
inline constexpr const char* kClustersFile = "clusters.json";
inline constexpr const char* kClusterReportFile = "clustering_report.md";
inline constexpr const char* kSurveyFile = "survey.md";
inline constexpr const char* kEvaluationFile = "enhanced_evaluation_v3.json";
inline constexpr const char* kDigestFile = "evaluation_digest.md";
inline constexpr const char* kSummaryFile = "run_summary.json";
inline constexpr const char* kRunConfigFile = "run_config.json";

enum class StageStatus { kCompleted, kSkipped, kFailed, kNotRun };

std::string_view StageStatusName(StageStatus status);

struct StageReport {
  StageId stage = StageId::kAcquire;
  StageStatus status = StageStatus::kNotRun;
  double duration_ms = 0.0;
  nlohmann::ordered_json counts = nlohmann::ordered_json::object();
  // Why a stage was skipped or failed.
  std::string note;
};

struct RunHooks {
  // Called after each stage's checkpoint is on disk.
  std::function<void(StageId)> after_checkpoint;
};

struct RunResult {
  int exit_code = kExitSuccess;
  ValidationResult validation;
  std::vector<StageReport> stages;
  std::vector<std::string> degraded_flags;
  std::string error;
  // run_summary.json contents; empty when the run stopped at validation.
  std::string summary_json;
};

// Validate (without network probes) -> lock the output directory -> run
// every selected stage, reading inputs from the artifacts on disk and
// checkpointing after each. Never throws.
RunResult Run(const PipelineConfig& config, const RunHooks& hooks = {});

}  // namespace litpipe::pipeline

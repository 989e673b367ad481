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

#include <array>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "evaluator/rubric.hpp"

namespace litpipe::evaluator {

inline constexpr int kEvaluationSchema = 1;

enum class ScoreSource { kDeterministic, kJudged };

struct DimensionScore {
  std::string name;
  Category category = Category::kCore;
  double weight = 0.0;
  std::optional<double> score;  // nullopt: missing
  std::string justification;
  std::vector<std::string> evidence;
  ScoreSource source = ScoreSource::kJudged;
};

struct ClusterCitation {
  int index = 0;
  std::string name;
  std::size_t cited = 0;
  std::size_t size = 0;
};

struct DeterministicMetrics {
  double citation_coverage = 0.0;
  std::size_t cited_papers = 0;
  std::size_t corpus_size = 0;
  std::size_t word_count = 0;
  std::size_t section_count = 0;
  std::size_t heading_count = 0;
  double cluster_representation = 0.0;
  std::vector<ClusterCitation> cluster_citations;
  std::size_t unresolved_citations = 0;
  std::size_t failed_sections = 0;
  bool coverage_min_met = false;
  bool coverage_target_met = false;
};

struct Recommendation {
  std::string priority;  // HIGH, MEDIUM, LOW
  std::string recommendation;
  std::string impact;
  std::string effort;
};

struct EvaluationReport {
  std::string topic;
  std::array<DimensionScore, kDimensionCount> dimensions;
  std::optional<CategoryScores> scores;  // nullopt when incomplete
  std::string quality_level;
  std::string publication_readiness;
  std::string vs_acm_computing_surveys;
  std::string vs_conference_surveys;
  std::string vs_workshop_papers;
  std::vector<std::string> strengths;
  std::vector<std::string> weaknesses;
  std::vector<Recommendation> recommendations;
  std::string executive_summary;
  DeterministicMetrics metrics;
  std::string survey_sha256;
  std::string judge_provider;
  std::string timestamp;
  std::vector<std::string> missing_dimensions;
  std::vector<std::string> warnings;

  bool complete() const { return missing_dimensions.empty() && scores.has_value(); }
};

double Round2(double v);

// Grade band for an overall score.
std::string QualityLevel(double overall);
std::string PublicationReadiness(double overall, const DeterministicMetrics& m);

// Fills strengths, weaknesses, recommendations and the executive summary
// from the scores and metrics.
void WriteNarrative(EvaluationReport& report, double coverage_min, double coverage_target);

// enhanced_evaluation_v3.json. Scores are rounded to two decimals on the
// way out, so ReportFromJson(ReportToJson(r)) re-emits identical bytes.
nlohmann::ordered_json ReportToJson(const EvaluationReport& report);
EvaluationReport ReportFromJson(const nlohmann::json& j);

// evaluation_digest.md: overall scores, a 12-row dimension table in rubric
// order, metrics and the narrative lists.
std::string RenderDigest(const EvaluationReport& report);

}  // namespace litpipe::evaluator

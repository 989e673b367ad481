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

#include <optional>
#include <string>
#include <vector>

#include "evaluator/rubric.hpp"

namespace litpipe::infra {
class TextGenerator;
class RateManager;
}  // namespace litpipe::infra

namespace litpipe::evaluator {

inline constexpr std::size_t kMinEvidence = 3;

struct JudgeReply {
  double score = 0.0;
  std::string justification;
  std::vector<std::string> evidence;
};

// Reads the labeled-line contract:
//   SCORE: <number>            (also "7/10"; markdown emphasis tolerated)
//   JUSTIFICATION: <text>
//   EVIDENCE: "<snippet>"      (at least three)
// Other lines are ignored. nullopt when any part is missing or the score is
// not a finite number. The score is returned unclamped.
std::optional<JudgeReply> ParseJudgeReply(const std::string& text);

struct JudgeContext {
  std::string topic;
  std::size_t corpus_size = 0;
  std::size_t cluster_count = 0;
  double coverage = 0.0;
  std::size_t word_count = 0;
  double cluster_representation = 0.0;
  std::string survey;
};

std::string BuildJudgePrompt(const DimensionSpec& dim, const JudgeContext& ctx);

struct JudgeOutcome {
  std::optional<JudgeReply> reply;  // nullopt: dimension missing
  int attempts = 0;
  std::vector<std::string> warnings;
};

// One request, one more if the reply does not parse. Scores outside
// [0, 10] are clamped with a warning.
JudgeOutcome JudgeDimension(const DimensionSpec& dim, const JudgeContext& ctx,
                            infra::TextGenerator& judge, infra::RateManager* rate,
                            std::uint64_t seed = 0);

std::string BuildComparePrompt(const JudgeContext& ctx);

}  // namespace litpipe::evaluator

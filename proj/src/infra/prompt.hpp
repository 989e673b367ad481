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
#include <string_view>
#include <vector>

namespace litpipe::infra {

// Prompts are plain text readable by any model, but every prompt the
// pipeline builds also follows a line-oriented layout:
//
//   TASK: <task-name>
//   <FIELD>: <single-line value>
//   PAPERS:
//   - CITE: [Author, Year] | TITLE: ... | YEAR: ... | AUTHORS: ... | CITATIONS: n
//     ABSTRACT: ...
//   SURVEY:
//   <free text until end of prompt>
//
// so deterministic providers can act on them without a language model.
namespace task {
inline constexpr std::string_view kDraftSection = "draft-section";
inline constexpr std::string_view kAugmentCoverage = "augment-coverage";
inline constexpr std::string_view kNameCluster = "name-cluster";
inline constexpr std::string_view kJudgeDimension = "judge-dimension";
inline constexpr std::string_view kCompareStandards = "compare-standards";
inline constexpr std::string_view kExpandQueries = "expand-queries";
}  // namespace task

struct PromptPaper {
  std::string cite;  // rendered "[Author, Year]"
  std::string title;
  std::string year;
};

struct PromptFields {
  std::string task;
  std::map<std::string, std::string> fields;
  std::vector<PromptPaper> papers;
  std::string survey;  // text after a "SURVEY:" line, if any

  std::string Get(const std::string& key, const std::string& fallback = "") const;
};

PromptFields ParsePrompt(std::string_view prompt);

}  // namespace litpipe::infra

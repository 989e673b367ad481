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

#include "evaluator/rubric.hpp"

#include <algorithm>

#include "common/error.hpp"

namespace litpipe::evaluator {

std::string_view CategoryName(Category c) {
  switch (c) {
    case Category::kCore:
      return "core";
    case Category::kWriting:
      return "writing";
    case Category::kDepth:
      return "depth";
  }
  return "core";
}

std::string_view CategoryTitle(Category c) {
  switch (c) {
    case Category::kCore:
      return "Core Quality";
    case Category::kWriting:
      return "Writing Quality";
    case Category::kDepth:
      return "Content Depth";
  }
  return "Core Quality";
}

const std::array<DimensionSpec, kDimensionCount>& Rubric() {
  static const std::array<DimensionSpec, kDimensionCount> kRubric = {{
      {"Citation Coverage", Category::kCore, 0.15,
       "share of the corpus that is cited; spread of citations over clusters; whether the most "
       "cited corpus papers appear"},
      {"Accuracy", Category::kCore, 0.15,
       "claims backed by the cited work; author and year attributions that match the paper "
       "list; overreaching generalizations"},
      {"Synthesis Quality", Category::kCore, 0.15,
       "papers discussed in relation to each other rather than one after another; explicit "
       "comparisons; connections drawn across papers"},
      {"Organization", Category::kCore, 0.15,
       "section and subsection hierarchy; transitions between sections; ordering of material"},
      {"Readability", Category::kWriting, 0.05,
       "sentence length and variety; whether technical terms are introduced before use; "
       "paragraph unity"},
      {"Academic Rigor", Category::kWriting, 0.05,
       "consistent citation format; transparency about method; acknowledged limitations"},
      {"Clarity", Category::kWriting, 0.05,
       "precise technical descriptions; ambiguous statements; helpful examples"},
      {"Coherence", Category::kWriting, 0.05,
       "consistent terminology and themes; correct internal cross-references; a continuous "
       "narrative"},
      {"Comprehensiveness", Category::kDepth, 0.05,
       "every cluster represented; span of publication years; breadth of sources"},
      {"Critical Analysis", Category::kDepth, 0.05,
       "depth of limitation discussion; conflicting results acknowledged; critique of methods"},
      {"Novelty & Insights", Category::kDepth, 0.05,
       "new connections between lines of work; identified patterns; proposed taxonomies"},
      {"Future Directions", Category::kDepth, 0.05,
       "specific and feasible directions; gaps tied to evidence from the corpus"},
  }};
  return kRubric;
}

std::optional<std::size_t> DimensionIndex(std::string_view name) {
  const auto& r = Rubric();
  for (std::size_t i = 0; i < r.size(); ++i) {
    if (r[i].name == name) return i;
  }
  return std::nullopt;
}

double OverallFromCategories(double core, double writing, double depth) {
  return kCoreWeight * core + kWritingWeight * writing + kDepthWeight * depth;
}

CategoryScores Aggregate(const std::array<std::optional<double>, kDimensionCount>& scores) {
  const auto& r = Rubric();
  std::string missing;
  double sum[3] = {0, 0, 0};
  int count[3] = {0, 0, 0};
  for (std::size_t i = 0; i < kDimensionCount; ++i) {
    if (!scores[i]) {
      missing += (missing.empty() ? "" : ", ") + std::string(r[i].name);
      continue;
    }
    auto c = static_cast<int>(r[i].category);
    sum[c] += *scores[i];
    ++count[c];
  }
  if (!missing.empty()) Fail(ErrorCode::kAggregation, "missing dimension scores: " + missing);
  CategoryScores out;
  out.core = sum[0] / count[0];
  out.writing = sum[1] / count[1];
  out.depth = sum[2] / count[2];
  out.overall = OverallFromCategories(out.core, out.writing, out.depth);
  return out;
}

double WeightedSum(const std::array<double, kDimensionCount>& scores) {
  double s = 0.0;
  for (std::size_t i = 0; i < kDimensionCount; ++i) s += Rubric()[i].weight * scores[i];
  return s;
}

double CoverageScore(double coverage) { return std::clamp(10.0 * coverage, 0.0, 10.0); }

}  // namespace litpipe::evaluator

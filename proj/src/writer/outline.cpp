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

#include "writer/outline.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "common/error.hpp"

namespace litpipe::writer {

const char* SectionKindName(SectionKind kind) {
  switch (kind) {
    case SectionKind::kAbstract:
      return "abstract";
    case SectionKind::kIntroduction:
      return "introduction";
    case SectionKind::kClusterSection:
      return "cluster-section";
    case SectionKind::kCrossCutting:
      return "cross-cutting";
    case SectionKind::kFutureDirections:
      return "future-directions";
    case SectionKind::kConclusion:
      return "conclusion";
  }
  return "unknown";
}

std::size_t ClusterSectionBudget(std::size_t total, std::size_t size, std::size_t n) {
  if (n == 0) return 0;
  return static_cast<std::size_t>(
      std::llround(static_cast<double>(total) * static_cast<double>(size) / static_cast<double>(n)));
}

Outline PlanOutline(const std::vector<clustering::ClusterProfile>& profiles,
                    std::size_t word_budget) {
  if (profiles.empty()) Fail(ErrorCode::kInvalidInput, "an outline needs at least one cluster");
  std::size_t n = 0;
  for (const auto& p : profiles) n += p.size;
  std::vector<std::size_t> order(profiles.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (profiles[a].size != profiles[b].size) return profiles[a].size > profiles[b].size;
    return profiles[a].index < profiles[b].index;
  });

  Outline o;
  o.sections.push_back({SectionKind::kAbstract, std::nullopt, "Abstract", 250});
  o.sections.push_back({SectionKind::kIntroduction, std::nullopt, "Introduction", 400});
  for (auto i : order) {
    o.sections.push_back({SectionKind::kClusterSection, profiles[i].index, profiles[i].name,
                          ClusterSectionBudget(word_budget, profiles[i].size, n)});
  }
  o.sections.push_back({SectionKind::kCrossCutting, std::nullopt, "Cross-Cutting Themes", 500});
  o.sections.push_back({SectionKind::kFutureDirections, std::nullopt, "Future Directions", 300});
  o.sections.push_back({SectionKind::kConclusion, std::nullopt, "Conclusion", 200});
  return o;
}

}  // namespace litpipe::writer

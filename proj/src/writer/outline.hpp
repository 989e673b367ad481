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

#include "clustering/cluster.hpp"

namespace litpipe::writer {

enum class SectionKind {
  kAbstract,
  kIntroduction,
  kClusterSection,
  kCrossCutting,
  kFutureDirections,
  kConclusion,
};

const char* SectionKindName(SectionKind kind);

struct Section {
  SectionKind kind = SectionKind::kAbstract;
  std::optional<int> cluster_index;
  std::string title;
  std::size_t word_budget = 0;
};

struct Outline {
  std::vector<Section> sections;
};

inline constexpr std::size_t kDefaultWordBudget = 10000;

// Abstract, introduction, one section per cluster (size desc, index asc),
// cross-cutting themes, future directions, conclusion. Cluster sections
// share `word_budget` in proportion to size; framing sections have fixed
// budgets.
Outline PlanOutline(const std::vector<clustering::ClusterProfile>& profiles,
                    std::size_t word_budget = kDefaultWordBudget);

// total * size / n, rounded to nearest.
std::size_t ClusterSectionBudget(std::size_t total, std::size_t size, std::size_t n);

}  // namespace litpipe::writer

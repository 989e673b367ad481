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
#include <string_view>
#include <vector>

namespace litpipe::evaluator {

enum class Category { kCore, kWriting, kDepth };

std::string_view CategoryName(Category c);     // "core", "writing", "depth"
std::string_view CategoryTitle(Category c);    // "Core Quality", ...

struct DimensionSpec {
  std::string_view name;
  Category category;
  double weight;
  // What the judge is asked to look at.
  std::string_view focus;
};

inline constexpr std::size_t kDimensionCount = 12;
inline constexpr double kCoreWeight = 0.6;
inline constexpr double kWritingWeight = 0.2;
inline constexpr double kDepthWeight = 0.2;

// The twelve dimensions in table order: four core at 0.15, then four
// writing and four depth at 0.05.
const std::array<DimensionSpec, kDimensionCount>& Rubric();
std::optional<std::size_t> DimensionIndex(std::string_view name);

inline constexpr std::size_t kCoverageDimension = 0;

struct CategoryScores {
  double core = 0.0;
  double writing = 0.0;
  double depth = 0.0;
  double overall = 0.0;
};

// 0.6 core + 0.2 writing + 0.2 depth.
double OverallFromCategories(double core, double writing, double depth);

// Category means and overall. Throws Error(kAggregation) naming every
// missing dimension.
CategoryScores Aggregate(const std::array<std::optional<double>, kDimensionCount>& scores);

// Sum of weight_d * score_d; equal to Aggregate().overall up to rounding.
double WeightedSum(const std::array<double, kDimensionCount>& scores);

// 10 x coverage, capped at 10.
double CoverageScore(double coverage);

}  // namespace litpipe::evaluator

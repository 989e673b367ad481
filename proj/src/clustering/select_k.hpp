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
#include <map>
#include <utility>

#include "clustering/kmeans.hpp"

namespace litpipe::clustering {

struct KRange {
  int lo = 5;
  int hi = 15;
};

// [max(2, k_min), min(k_max, n - 1)]; when that is empty the range
// collapses to {min(k_max, n - 1)}, i.e. lo is pulled down to hi.
// Throws Error(kInvalidInput) for n < 3.
KRange EffectiveKRange(int k_min, int k_max, std::size_t n);

struct KSelectionResult {
  int k_star = 0;
  std::map<int, double> scores;
  KRange range;
  ClusterAssignment best;
};

// Silhouette for every K in the effective range, each K run with seed + K
// (in parallel when `parallel`); argmax with ties to the smallest K.
KSelectionResult SelectK(const Matrix& x, int k_min, int k_max, std::uint64_t seed,
                         const KMeansOptions& options = {}, bool parallel = true);

}  // namespace litpipe::clustering

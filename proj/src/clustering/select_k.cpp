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

#include "clustering/select_k.hpp"

#include <algorithm>
#include <future>
#include <vector>

#include "clustering/metrics.hpp"
#include "common/error.hpp"

namespace litpipe::clustering {

KRange EffectiveKRange(int k_min, int k_max, std::size_t n) {
  if (n < 3) Fail(ErrorCode::kInvalidInput, "K selection needs at least 3 points");
  if (k_min > k_max) Fail(ErrorCode::kInvalidInput, "k_min exceeds k_max");
  KRange r;
  r.hi = std::min(k_max, static_cast<int>(n) - 1);
  r.lo = std::max(2, k_min);
  if (r.hi < 2) Fail(ErrorCode::kInvalidInput, "k_max must be at least 2");
  if (r.lo > r.hi) r.lo = r.hi;
  return r;
}

KSelectionResult SelectK(const Matrix& x, int k_min, int k_max, std::uint64_t seed,
                         const KMeansOptions& options, bool parallel) {
  KSelectionResult result;
  result.range = EffectiveKRange(k_min, k_max, x.rows());
  struct Trial {
    ClusterAssignment assignment;
    double score;
  };
  auto run = [&](int k) {
    auto a = KMeans(x, k, seed + static_cast<std::uint64_t>(k), options);
    double s = Silhouette(x, a.labels).score;
    return Trial{std::move(a), s};
  };
  std::vector<std::future<Trial>> futures;
  for (int k = result.range.lo; k <= result.range.hi; ++k) {
    futures.push_back(std::async(parallel ? std::launch::async : std::launch::deferred, run, k));
  }
  bool have = false;
  for (int k = result.range.lo; k <= result.range.hi; ++k) {
    auto t = futures[static_cast<std::size_t>(k - result.range.lo)].get();
    result.scores[k] = t.score;
    if (!have || t.score > result.scores[result.k_star]) {
      result.k_star = k;
      result.best = std::move(t.assignment);
      have = true;
    }
  }
  return result;
}

}  // namespace litpipe::clustering

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

#include "clustering/kmeans.hpp"

#include <limits>
#include <random>

#include "common/error.hpp"

namespace litpipe::clustering {
namespace {

double Uniform(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

std::size_t Pick(std::mt19937_64& rng, std::size_t n) {
  return static_cast<std::size_t>(Uniform(rng) * static_cast<double>(n)) % n;
}

Matrix SeedPlusPlus(const Matrix& x, int k, std::mt19937_64& rng) {
  const std::size_t n = x.rows();
  Matrix c(static_cast<std::size_t>(k), x.cols());
  std::vector<double> d2(n, std::numeric_limits<double>::infinity());
  std::size_t pick = Pick(rng, n);
  for (int j = 0; j < k; ++j) {
    if (j > 0) {
      double total = 0.0;
      for (double v : d2) total += v;
      if (total <= 0.0) {
        pick = Pick(rng, n);
      } else {
        double target = Uniform(rng) * total;
        pick = n - 1;
        double acc = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
          acc += d2[i];
          if (acc > target && d2[i] > 0.0) {
            pick = i;
            break;
          }
        }
      }
    }
    std::copy(x.Row(pick).begin(), x.Row(pick).end(), c.Row(static_cast<std::size_t>(j)).begin());
    for (std::size_t i = 0; i < n; ++i) {
      d2[i] = std::min(d2[i], SquaredDistance(x.Row(i), c.Row(static_cast<std::size_t>(j))));
    }
  }
  return c;
}

// Assigns every point, then repairs empty clusters. Returns true if a repair
// was needed.
bool Assign(const Matrix& x, Matrix& centroids, std::vector<int>& labels) {
  const std::size_t n = x.rows();
  const std::size_t k = centroids.rows();
  std::vector<std::size_t> count(k, 0);
  std::vector<double> own(n);
  for (std::size_t i = 0; i < n; ++i) {
    labels[i] = NearestCentroid(centroids, x.Row(i));
    own[i] = SquaredDistance(x.Row(i), centroids.Row(static_cast<std::size_t>(labels[i])));
    ++count[static_cast<std::size_t>(labels[i])];
  }
  bool repaired = false;
  for (std::size_t j = 0; j < k; ++j) {
    if (count[j] != 0) continue;
    std::size_t far = n;
    for (std::size_t i = 0; i < n; ++i) {
      if (count[static_cast<std::size_t>(labels[i])] < 2) continue;
      if (far == n || own[i] > own[far]) far = i;
    }
    if (far == n) Fail(ErrorCode::kInternalConsistency, "no point available for empty cluster");
    --count[static_cast<std::size_t>(labels[far])];
    labels[far] = static_cast<int>(j);
    ++count[j];
    own[far] = 0.0;
    std::copy(x.Row(far).begin(), x.Row(far).end(), centroids.Row(j).begin());
    repaired = true;
  }
  return repaired;
}

ClusterAssignment RunOnce(const Matrix& x, int k, std::mt19937_64& rng, int max_iterations) {
  ClusterAssignment out;
  out.k = k;
  out.centroids = SeedPlusPlus(x, k, rng);
  out.labels.assign(x.rows(), -1);
  std::vector<int> next(x.rows());
  for (int it = 1; it <= max_iterations; ++it) {
    out.iterations_run = it;
    bool repaired = Assign(x, out.centroids, next);
    if (!repaired && next == out.labels) {
      out.converged = true;
      break;
    }
    out.labels = next;
    out.centroids = LabelMeans(x, out.labels, k);
  }
  if (!out.converged) {
    // Out of iterations: keep the last centroids and give every point its
    // nearest one, so the nearest-centroid property still holds.
    Assign(x, out.centroids, out.labels);
  }
  out.inertia = 0.0;
  for (std::size_t i = 0; i < x.rows(); ++i) {
    out.inertia +=
        SquaredDistance(x.Row(i), out.centroids.Row(static_cast<std::size_t>(out.labels[i])));
  }
  return out;
}

}  // namespace

int NearestCentroid(const Matrix& centroids, std::span<const double> point) {
  int best = 0;
  double best_d = std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j < centroids.rows(); ++j) {
    double d = SquaredDistance(point, centroids.Row(j));
    if (d < best_d) {
      best_d = d;
      best = static_cast<int>(j);
    }
  }
  return best;
}

ClusterAssignment KMeans(const Matrix& x, int k, std::uint64_t seed, const KMeansOptions& options) {
  if (x.rows() == 0) Fail(ErrorCode::kInvalidInput, "k-means needs at least one point");
  if (k < 1 || static_cast<std::size_t>(k) > x.rows()) {
    Fail(ErrorCode::kInvalidInput,
         "k-means needs 1 <= K <= n (K=" + std::to_string(k) + ", n=" +
             std::to_string(x.rows()) + ")");
  }
  std::mt19937_64 rng(seed);
  ClusterAssignment best;
  bool have = false;
  for (int r = 0; r < std::max(1, options.restarts); ++r) {
    auto run = RunOnce(x, k, rng, std::max(1, options.max_iterations));
    if (!have || run.inertia < best.inertia) {
      best = std::move(run);
      have = true;
    }
  }
  best.seed = seed;
  return best;
}

}  // namespace litpipe::clustering

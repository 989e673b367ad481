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
#include <vector>

#include "clustering/matrix.hpp"

namespace litpipe::clustering {

struct KMeansOptions {
  int restarts = 10;
  int max_iterations = 300;
};

struct ClusterAssignment {
  std::vector<int> labels;
  int k = 0;
  Matrix centroids;
  std::uint64_t seed = 0;
  int iterations_run = 0;
  // Within-cluster sum of squared distances of the kept restart.
  double inertia = 0.0;
  bool converged = false;
};

// Lloyd iterations from k-means++ seeding, best of `restarts` by inertia
// (earliest restart on ties). An iteration stops the run once the
// assignment step reproduces the previous labels without needing repair,
// so on return every point's own centroid is a nearest centroid. Empty
// clusters are repaired by moving in the point farthest from its centroid.
// Throws Error(kInvalidInput) unless 1 <= k <= n.
ClusterAssignment KMeans(const Matrix& x, int k, std::uint64_t seed,
                         const KMeansOptions& options = {});

// Index of the nearest centroid, lowest index on ties.
int NearestCentroid(const Matrix& centroids, std::span<const double> point);

}  // namespace litpipe::clustering

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

#include <string>
#include <vector>

#include "clustering/matrix.hpp"

namespace litpipe::clustering {

struct SilhouetteResult {
  double score = 0.0;
  std::vector<double> per_point;
  std::vector<double> a;
  std::vector<double> b;
};

struct ClusterDiagnostics {
  double silhouette = 0.0;
  // +infinity when the within-cluster dispersion is zero.
  double calinski_harabasz = 0.0;
  // +infinity when two centroids coincide.
  double davies_bouldin = 0.0;
  std::vector<double> per_point_silhouette;
  std::vector<double> per_point_a;
  std::vector<double> per_point_b;
  std::vector<std::string> warnings;
};

// Euclidean silhouette. Clusters are the distinct label values; b ranges
// over the other non-empty clusters. Points in singleton clusters get
// s = 0, as do points with a = b = 0. Throws Error(kInvalidInput) with
// fewer than two non-empty clusters.
SilhouetteResult Silhouette(const Matrix& x, const std::vector<int>& labels);

// Calinski-Harabasz and Davies-Bouldin over label means.
void ValidityIndices(const Matrix& x, const std::vector<int>& labels, ClusterDiagnostics& out);

ClusterDiagnostics Diagnose(const Matrix& x, const std::vector<int>& labels);

// 1 - d(x_i, own centroid) / max_k d(x_i, c_k); 1 when every distance is 0.
double Confidence(const Matrix& x, const std::vector<int>& labels, const Matrix& centroids,
                  std::size_t i);

// Cosine similarity of two centroids, exactly 1 for j == k. Throws
// Error(kUndefinedStrength) on a zero-norm centroid.
double InterclusterStrength(const Matrix& centroids, std::size_t j, std::size_t k);

enum class RelationshipLabel { kOverlapping, kComplementary, kDistinct };

inline constexpr double kOverlappingThreshold = 0.80;
inline constexpr double kComplementaryThreshold = 0.50;

RelationshipLabel LabelStrength(double strength);
const char* RelationshipLabelName(RelationshipLabel label);

}  // namespace litpipe::clustering

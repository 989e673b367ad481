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

#include "clustering/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <fmt/format.h>

#include "common/error.hpp"

namespace litpipe::clustering {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

int LabelCount(const std::vector<int>& labels, std::size_t n) {
  if (labels.size() != n) Fail(ErrorCode::kInvalidInput, "labels do not match the point count");
  int k = 0;
  for (int l : labels) {
    if (l < 0) Fail(ErrorCode::kInvalidInput, "negative cluster label");
    k = std::max(k, l + 1);
  }
  return k;
}

}  // namespace

SilhouetteResult Silhouette(const Matrix& x, const std::vector<int>& labels) {
  const std::size_t n = x.rows();
  const int k = LabelCount(labels, n);
  std::vector<std::size_t> size(static_cast<std::size_t>(k), 0);
  for (int l : labels) ++size[static_cast<std::size_t>(l)];
  if (std::count_if(size.begin(), size.end(), [](std::size_t s) { return s > 0; }) < 2) {
    Fail(ErrorCode::kInvalidInput, "silhouette needs at least two non-empty clusters");
  }

  SilhouetteResult r;
  r.per_point.resize(n);
  r.a.resize(n);
  r.b.resize(n);
  std::vector<double> sum(static_cast<std::size_t>(k));
  double total = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    std::fill(sum.begin(), sum.end(), 0.0);
    for (std::size_t j = 0; j < n; ++j) {
      if (j != i) sum[static_cast<std::size_t>(labels[j])] += Distance(x.Row(i), x.Row(j));
    }
    const auto own = static_cast<std::size_t>(labels[i]);
    double a = size[own] > 1 ? sum[own] / static_cast<double>(size[own] - 1) : 0.0;
    double b = kInf;
    for (std::size_t c = 0; c < sum.size(); ++c) {
      if (c == own || size[c] == 0) continue;
      b = std::min(b, sum[c] / static_cast<double>(size[c]));
    }
    double s = 0.0;
    if (size[own] > 1) {
      double m = std::max(a, b);
      s = m > 0.0 ? (b - a) / m : 0.0;
    }
    r.a[i] = a;
    r.b[i] = b;
    r.per_point[i] = s;
    total += s;
  }
  r.score = total / static_cast<double>(n);
  return r;
}

void ValidityIndices(const Matrix& x, const std::vector<int>& labels, ClusterDiagnostics& out) {
  const std::size_t n = x.rows();
  const int k_labels = LabelCount(labels, n);
  std::vector<std::size_t> count;
  Matrix means = LabelMeans(x, labels, k_labels, &count);
  std::vector<std::size_t> present;
  for (std::size_t j = 0; j < count.size(); ++j) {
    if (count[j] > 0) present.push_back(j);
  }
  const std::size_t k = present.size();
  if (k < 2) Fail(ErrorCode::kInvalidInput, "validity indices need at least two clusters");

  std::vector<double> grand(x.cols(), 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t d = 0; d < x.cols(); ++d) grand[d] += x(i, d);
  }
  for (auto& g : grand) g /= static_cast<double>(n);

  double between = 0.0;
  for (auto j : present) {
    between += static_cast<double>(count[j]) * SquaredDistance(means.Row(j), grand);
  }
  double within = 0.0;
  std::vector<double> spread(count.size(), 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    const auto j = static_cast<std::size_t>(labels[i]);
    within += SquaredDistance(x.Row(i), means.Row(j));
    spread[j] += Distance(x.Row(i), means.Row(j));
  }
  if (within == 0.0 || n == k) {
    out.calinski_harabasz = between > 0.0 ? kInf : 0.0;
  } else {
    out.calinski_harabasz = (between / static_cast<double>(k - 1)) /
                            (within / static_cast<double>(n - k));
  }

  for (auto j : present) spread[j] /= static_cast<double>(count[j]);
  double db = 0.0;
  bool coincident = false;
  for (auto j : present) {
    double worst = 0.0;
    for (auto m : present) {
      if (m == j) continue;
      double d = Distance(means.Row(j), means.Row(m));
      double r = d > 0.0 ? (spread[j] + spread[m]) / d : kInf;
      if (d == 0.0) coincident = true;
      worst = std::max(worst, r);
    }
    db += worst;
  }
  out.davies_bouldin = db / static_cast<double>(k);
  if (coincident) {
    out.warnings.push_back("coincident cluster centroids: Davies-Bouldin reported as infinity");
  }
}

ClusterDiagnostics Diagnose(const Matrix& x, const std::vector<int>& labels) {
  ClusterDiagnostics d;
  auto s = Silhouette(x, labels);
  d.silhouette = s.score;
  d.per_point_silhouette = std::move(s.per_point);
  d.per_point_a = std::move(s.a);
  d.per_point_b = std::move(s.b);
  ValidityIndices(x, labels, d);
  return d;
}

double Confidence(const Matrix& x, const std::vector<int>& labels, const Matrix& centroids,
                  std::size_t i) {
  if (i >= x.rows() || i >= labels.size()) {
    Fail(ErrorCode::kInvalidInput, fmt::format("point index {} out of range", i));
  }
  const auto own = static_cast<std::size_t>(labels[i]);
  if (own >= centroids.rows()) Fail(ErrorCode::kInvalidInput, "label has no centroid");
  double d_own = Distance(x.Row(i), centroids.Row(own));
  double d_max = 0.0;
  for (std::size_t c = 0; c < centroids.rows(); ++c) {
    d_max = std::max(d_max, Distance(x.Row(i), centroids.Row(c)));
  }
  if (d_max == 0.0) return 1.0;
  return 1.0 - d_own / d_max;
}

double InterclusterStrength(const Matrix& centroids, std::size_t j, std::size_t k) {
  if (j >= centroids.rows() || k >= centroids.rows()) {
    Fail(ErrorCode::kInvalidInput, "cluster index out of range");
  }
  auto a = centroids.Row(j);
  auto b = centroids.Row(k);
  double na = 0.0, nb = 0.0, dot = 0.0;
  for (std::size_t d = 0; d < a.size(); ++d) {
    na += a[d] * a[d];
    nb += b[d] * b[d];
    dot += a[d] * b[d];
  }
  if (na == 0.0 || nb == 0.0) {
    Fail(ErrorCode::kUndefinedStrength,
         fmt::format("zero-norm centroid in strength({}, {})", j, k));
  }
  if (j == k) return 1.0;
  return std::clamp(dot / (std::sqrt(na) * std::sqrt(nb)), -1.0, 1.0);
}

RelationshipLabel LabelStrength(double strength) {
  if (strength >= kOverlappingThreshold) return RelationshipLabel::kOverlapping;
  if (strength >= kComplementaryThreshold) return RelationshipLabel::kComplementary;
  return RelationshipLabel::kDistinct;
}

const char* RelationshipLabelName(RelationshipLabel label) {
  switch (label) {
    case RelationshipLabel::kOverlapping:
      return "overlapping";
    case RelationshipLabel::kComplementary:
      return "complementary";
    case RelationshipLabel::kDistinct:
      return "distinct";
  }
  return "distinct";
}

}  // namespace litpipe::clustering

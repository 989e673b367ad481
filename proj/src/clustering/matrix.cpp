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

#include "clustering/matrix.hpp"

#include <cmath>

#include "common/error.hpp"

namespace litpipe::clustering {

Matrix FromEmbeddings(const embedding::EmbeddingMatrix& m) {
  Matrix x(m.vectors.size(), embedding::kEmbeddingDim);
  for (std::size_t i = 0; i < m.vectors.size(); ++i) {
    for (std::size_t d = 0; d < embedding::kEmbeddingDim; ++d) x(i, d) = m.vectors[i][d];
  }
  return x;
}

Matrix FromRows(const std::vector<std::vector<double>>& rows) {
  if (rows.empty()) return {};
  Matrix x(rows.size(), rows[0].size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != x.cols()) Fail(ErrorCode::kInvalidInput, "ragged matrix rows");
    for (std::size_t d = 0; d < x.cols(); ++d) x(i, d) = rows[i][d];
  }
  return x;
}

double SquaredDistance(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t d = 0; d < a.size(); ++d) {
    double t = a[d] - b[d];
    s += t * t;
  }
  return s;
}

double Distance(std::span<const double> a, std::span<const double> b) {
  return std::sqrt(SquaredDistance(a, b));
}

Matrix LabelMeans(const Matrix& x, const std::vector<int>& labels, int k,
                  std::vector<std::size_t>* counts) {
  Matrix c(static_cast<std::size_t>(k), x.cols());
  std::vector<std::size_t> n(static_cast<std::size_t>(k), 0);
  for (std::size_t i = 0; i < x.rows(); ++i) {
    auto row = c.Row(static_cast<std::size_t>(labels[i]));
    auto p = x.Row(i);
    for (std::size_t d = 0; d < x.cols(); ++d) row[d] += p[d];
    ++n[static_cast<std::size_t>(labels[i])];
  }
  for (std::size_t j = 0; j < n.size(); ++j) {
    if (n[j] == 0) continue;
    for (auto& v : c.Row(j)) v /= static_cast<double>(n[j]);
  }
  if (counts) *counts = std::move(n);
  return c;
}

}  // namespace litpipe::clustering

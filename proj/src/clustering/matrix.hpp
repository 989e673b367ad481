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

#include <cstddef>
#include <span>
#include <vector>

#include "embedding/types.hpp"

namespace litpipe::clustering {

// Dense row-major matrix of doubles; rows are points.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::span<double> Row(std::size_t i) { return {data_.data() + i * cols_, cols_}; }
  std::span<const double> Row(std::size_t i) const { return {data_.data() + i * cols_, cols_}; }
  double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }
  const std::vector<double>& data() const { return data_; }

  bool operator==(const Matrix&) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

Matrix FromEmbeddings(const embedding::EmbeddingMatrix& m);
Matrix FromRows(const std::vector<std::vector<double>>& rows);

double SquaredDistance(std::span<const double> a, std::span<const double> b);
double Distance(std::span<const double> a, std::span<const double> b);

// Coordinate-wise means of each label's members; rows of absent labels
// stay zero. counts (optional) receives the member count per label.
Matrix LabelMeans(const Matrix& x, const std::vector<int>& labels, int k,
                  std::vector<std::size_t>* counts = nullptr);

}  // namespace litpipe::clustering

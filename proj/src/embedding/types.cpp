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

#include "embedding/types.hpp"

#include <cmath>

#include "common/error.hpp"

namespace litpipe::embedding {

std::string PaperText(const acquisition::Paper& paper) {
  if (paper.abstract.empty()) return paper.title;
  return paper.title + " " + paper.abstract;
}

void CheckFinite(const EmbeddingVector& v) {
  for (float x : v) {
    if (!std::isfinite(x)) Fail(ErrorCode::kProtocol, "embedding has a non-finite entry");
  }
}

double L2Norm(const EmbeddingVector& v) {
  double sum = 0.0;
  for (float x : v) sum += static_cast<double>(x) * x;
  return std::sqrt(sum);
}

EmbeddingVector Normalized(const EmbeddingVector& v) {
  const double norm = L2Norm(v);
  if (norm == 0.0) Fail(ErrorCode::kProtocol, "cannot normalize a zero embedding");
  EmbeddingVector out;
  for (std::size_t i = 0; i < kEmbeddingDim; ++i) {
    out[i] = static_cast<float>(static_cast<double>(v[i]) / norm);
  }
  return out;
}

}  // namespace litpipe::embedding

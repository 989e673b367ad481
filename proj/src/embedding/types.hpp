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
#include <cstddef>
#include <string>
#include <vector>

#include "acquisition/types.hpp"

namespace litpipe::embedding {

inline constexpr std::size_t kEmbeddingDim = 384;
inline constexpr std::size_t kDefaultBatchSize = 32;
inline constexpr const char* kDefaultRemoteModel = "all-MiniLM-L6-v2";

using EmbeddingVector = std::array<float, kEmbeddingDim>;

struct EmbeddingMatrix {
  std::vector<EmbeddingVector> vectors;
  // Parallel to vectors; the corpus order the rows were aligned to.
  std::vector<std::string> paper_ids;
  std::string model_id;
  bool normalized = false;

  bool operator==(const EmbeddingMatrix&) const = default;
};

// Title, one space, abstract. An empty abstract yields the title alone.
std::string PaperText(const acquisition::Paper& paper);

// Throws Error(kProtocol) if any entry is NaN or infinite.
void CheckFinite(const EmbeddingVector& v);

double L2Norm(const EmbeddingVector& v);

// Throws Error(kProtocol) on a zero vector.
EmbeddingVector Normalized(const EmbeddingVector& v);

}  // namespace litpipe::embedding

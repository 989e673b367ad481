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
#include <string>
#include <vector>

#include "acquisition/types.hpp"
#include "embedding/cache.hpp"
#include "embedding/provider.hpp"

namespace litpipe::embedding {

struct EmbedOptions {
  // Upper bound on provider batches in flight at once.
  std::size_t max_concurrency = 4;
};

struct EmbedStats {
  std::size_t cache_hits = 0;
  std::size_t texts_sent = 0;
  std::size_t provider_calls = 0;
};

// Vectors for every paper, aligned to corpus order and L2-normalized. Only
// cache misses reach the provider; identical texts are sent once. Throws
// Error(kEmbeddingIncomplete) naming the papers left without a vector when
// a batch fails after retries (successful batches are still cached).
EmbeddingMatrix EmbedCorpus(const std::vector<acquisition::Paper>& papers,
                            EmbeddingProvider& provider, EmbeddingCache* cache,
                            infra::RateManager* rate, const EmbedOptions& options = {},
                            EmbedStats* stats = nullptr);

// embeddings.bin: "LPEMB001", u32 n, u32 dim, u32 normalized, u32 len +
// model_id, then n rows of {u32 len + paper id, dim LE float32}.
std::string SerializeMatrix(const EmbeddingMatrix& m);
EmbeddingMatrix DeserializeMatrix(std::string_view bytes);

}  // namespace litpipe::embedding

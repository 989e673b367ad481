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
#include <filesystem>
#include <map>
#include <optional>
#include <shared_mutex>
#include <string>
#include <unordered_map>

#include "common/sha256.hpp"
#include "embedding/types.hpp"
#include "infra/cache.hpp"

namespace litpipe::embedding {

// Persistent store of raw vectors keyed by (model_id, SHA-256 of the text).
//
// On disk, per model: "<model>.rec" is an append-only sequence of
// {32-byte hash, 384 little-endian float32} records and "<model>.idx" an
// append-only sequence of {32-byte hash, uint64 LE offset into .rec}. A
// later index entry for the same hash wins. A byte-capped LRU sits in front.
// With no directory the store is memory-only.
class EmbeddingCache {
 public:
  explicit EmbeddingCache(std::optional<std::filesystem::path> dir,
                          std::size_t memory_bytes = 64u << 20);

  std::optional<EmbeddingVector> Get(const std::string& model_id, const Digest256& hash);
  void Put(const std::string& model_id, const Digest256& hash, const EmbeddingVector& v);
  std::size_t Size(const std::string& model_id);

  static constexpr std::size_t kRecordBytes = 32 + kEmbeddingDim * 4;

 private:
  struct ModelIndex {
    std::unordered_map<std::string, std::uint64_t> offsets;
    std::uint64_t rec_size = 0;
  };

  ModelIndex& LoadLocked(const std::string& model_id);
  std::filesystem::path RecPath(const std::string& model_id) const;
  std::filesystem::path IdxPath(const std::string& model_id) const;

  std::optional<std::filesystem::path> dir_;
  infra::TtlLruCache memory_;
  // Reads take the lock shared; appends and index loads exclusive.
  std::shared_mutex mu_;
  std::map<std::string, ModelIndex> models_;
};

std::string EncodeVector(const EmbeddingVector& v);
EmbeddingVector DecodeVector(std::string_view bytes);

}  // namespace litpipe::embedding

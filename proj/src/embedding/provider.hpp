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
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "embedding/types.hpp"
#include "infra/http.hpp"

namespace litpipe::infra {
class RateManager;
}

namespace litpipe::embedding {

class EmbeddingProvider {
 public:
  virtual ~EmbeddingProvider() = default;
  virtual std::string model_id() const = 0;
  virtual std::size_t max_batch() const { return kDefaultBatchSize; }
  // One provider invocation; texts.size() <= max_batch(). Returns raw,
  // unnormalized vectors in input order.
  virtual std::vector<EmbeddingVector> EmbedRaw(std::span<const std::string> texts) = 0;
};

// Splits texts into max_batch() chunks and calls the provider once per
// chunk, through the rate manager (source "embedding") when one is given.
// Throws Error(kInvalidInput) on an empty list.
std::vector<EmbeddingVector> EmbedBatch(EmbeddingProvider& provider,
                                        const std::vector<std::string>& texts,
                                        infra::RateManager* rate = nullptr);

// Offline stand-in: each lowercase word hashes to a seeded pseudo-random
// direction and a text is the sum of its words' directions, so texts that
// share vocabulary land near each other.
class MockEmbeddingProvider final : public EmbeddingProvider {
 public:
  explicit MockEmbeddingProvider(std::uint64_t seed = 0) : seed_(seed) {}
  std::string model_id() const override { return "mock-hash-384"; }
  std::vector<EmbeddingVector> EmbedRaw(std::span<const std::string> texts) override;
  EmbeddingVector EmbedOne(const std::string& text) const;

 private:
  std::uint64_t seed_;
};

// Client for the embedding sidecar: POST {endpoint}/embed with
// {"texts": [...], "normalize": false}; expects {"vectors", "model_id", "dim"}.
class SidecarEmbeddingProvider final : public EmbeddingProvider {
 public:
  SidecarEmbeddingProvider(std::string endpoint, infra::HttpTransport& transport,
                           std::string model_id = kDefaultRemoteModel);
  std::string model_id() const override { return model_id_; }
  std::vector<EmbeddingVector> EmbedRaw(std::span<const std::string> texts) override;
  // GET {endpoint}/healthz; throws unless status is ok with dim 384.
  void CheckHealth();

 private:
  std::string endpoint_;
  infra::HttpTransport& transport_;
  std::string model_id_;
};

// Decodes an /embed response body. Throws Error(kProtocol) on any shape,
// count or dimension mismatch.
std::vector<EmbeddingVector> ParseEmbedResponse(const std::string& body, std::size_t expected,
                                                std::string* model_id = nullptr);

}  // namespace litpipe::embedding

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

#include "embedding/provider.hpp"

#include <cmath>

#include <json.hpp>

#include "common/error.hpp"
#include "common/text.hpp"
#include "infra/rate_manager.hpp"

namespace litpipe::embedding {
namespace {

std::uint64_t Fnv1a(std::string_view s) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

std::uint64_t SplitMix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

void AddDirection(EmbeddingVector& acc, std::uint64_t h) {
  for (std::size_t d = 0; d < kEmbeddingDim; ++d) {
    // Top 53 bits -> [0,1) -> [-1,1).
    double u = static_cast<double>(SplitMix64(h + d * 0x632be59bd9b4e019ull) >> 11) * 0x1.0p-53;
    acc[d] += static_cast<float>(2.0 * u - 1.0);
  }
}

}  // namespace

std::vector<EmbeddingVector> EmbedBatch(EmbeddingProvider& provider,
                                        const std::vector<std::string>& texts,
                                        infra::RateManager* rate) {
  if (texts.empty()) Fail(ErrorCode::kInvalidInput, "embed_batch needs at least one text");
  const std::size_t limit = std::max<std::size_t>(1, provider.max_batch());
  std::vector<EmbeddingVector> out;
  out.reserve(texts.size());
  for (std::size_t begin = 0; begin < texts.size(); begin += limit) {
    std::span<const std::string> chunk(texts.data() + begin,
                                       std::min(limit, texts.size() - begin));
    auto call = [&] {
      auto vectors = provider.EmbedRaw(chunk);
      if (vectors.size() != chunk.size()) {
        Fail(ErrorCode::kProtocol, "provider returned " + std::to_string(vectors.size()) +
                                       " vectors for " + std::to_string(chunk.size()) + " texts");
      }
      for (const auto& v : vectors) CheckFinite(v);
      return vectors;
    };
    auto vectors = rate ? rate->Call("embedding", call) : call();
    out.insert(out.end(), vectors.begin(), vectors.end());
  }
  return out;
}

EmbeddingVector MockEmbeddingProvider::EmbedOne(const std::string& text) const {
  EmbeddingVector v{};
  auto words = text::Words(text);
  std::size_t used = 0;
  for (const auto& w : words) {
    if (w.size() < 2 || text::IsStopword(w)) continue;
    AddDirection(v, Fnv1a(w) ^ SplitMix64(seed_));
    ++used;
  }
  if (used == 0) AddDirection(v, Fnv1a(text) ^ SplitMix64(seed_ + 1));
  return Normalized(v);
}

std::vector<EmbeddingVector> MockEmbeddingProvider::EmbedRaw(
    std::span<const std::string> texts) {
  std::vector<EmbeddingVector> out;
  out.reserve(texts.size());
  for (const auto& t : texts) out.push_back(EmbedOne(t));
  return out;
}

SidecarEmbeddingProvider::SidecarEmbeddingProvider(std::string endpoint,
                                                   infra::HttpTransport& transport,
                                                   std::string model_id)
    : endpoint_(std::move(endpoint)), transport_(transport), model_id_(std::move(model_id)) {
  while (!endpoint_.empty() && endpoint_.back() == '/') endpoint_.pop_back();
}

std::vector<EmbeddingVector> ParseEmbedResponse(const std::string& body, std::size_t expected,
                                                std::string* model_id) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(body);
  } catch (const nlohmann::json::exception& e) {
    Fail(ErrorCode::kProtocol, std::string("embed response is not JSON: ") + e.what());
  }
  if (!j.is_object() || !j.contains("vectors") || !j["vectors"].is_array()) {
    Fail(ErrorCode::kProtocol, "embed response lacks a vectors array");
  }
  if (j.contains("dim") && j["dim"] != kEmbeddingDim) {
    Fail(ErrorCode::kProtocol, "embed response dim " + j["dim"].dump() + " != 384");
  }
  const auto& rows = j["vectors"];
  if (rows.size() != expected) {
    Fail(ErrorCode::kProtocol, "embed response has " + std::to_string(rows.size()) +
                                   " vectors for " + std::to_string(expected) + " texts");
  }
  std::vector<EmbeddingVector> out;
  out.reserve(rows.size());
  for (const auto& row : rows) {
    if (!row.is_array() || row.size() != kEmbeddingDim) {
      Fail(ErrorCode::kProtocol, "embed response vector has length " +
                                     std::to_string(row.is_array() ? row.size() : 0) +
                                     ", expected 384");
    }
    EmbeddingVector v;
    for (std::size_t d = 0; d < kEmbeddingDim; ++d) {
      if (!row[d].is_number()) Fail(ErrorCode::kProtocol, "embed response has a non-number");
      v[d] = row[d].get<float>();
    }
    CheckFinite(v);
    out.push_back(v);
  }
  if (model_id && j.contains("model_id") && j["model_id"].is_string()) {
    *model_id = j["model_id"].get<std::string>();
  }
  return out;
}

std::vector<EmbeddingVector> SidecarEmbeddingProvider::EmbedRaw(
    std::span<const std::string> texts) {
  nlohmann::json body;
  body["texts"] = std::vector<std::string>(texts.begin(), texts.end());
  body["normalize"] = false;
  infra::HttpRequest req;
  req.method = "POST";
  req.url = endpoint_ + "/embed";
  req.body = body.dump();
  req.content_type = "application/json";
  auto resp = transport_.Send(req);
  infra::ThrowForStatus(resp, "embedding sidecar");
  std::string served;
  auto vectors = ParseEmbedResponse(resp.body, texts.size(), &served);
  if (!served.empty() && served != model_id_) {
    Fail(ErrorCode::kProtocol,
         "embedding sidecar serves '" + served + "', expected '" + model_id_ + "'");
  }
  return vectors;
}

void SidecarEmbeddingProvider::CheckHealth() {
  infra::HttpRequest req;
  req.url = endpoint_ + "/healthz";
  auto resp = transport_.Send(req);
  infra::ThrowForStatus(resp, "embedding sidecar health");
  try {
    auto j = nlohmann::json::parse(resp.body);
    if (j.value("status", "") != "ok" || j.value("dim", 0) != static_cast<int>(kEmbeddingDim)) {
      Fail(ErrorCode::kProtocol, "embedding sidecar unhealthy: " + resp.body);
    }
  } catch (const nlohmann::json::exception&) {
    Fail(ErrorCode::kProtocol, "embedding sidecar health response is not JSON");
  }
}

}  // namespace litpipe::embedding

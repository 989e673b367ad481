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

#include "embedding/embed_corpus.hpp"

#include <algorithm>
#include <future>
#include <map>

#include "common/error.hpp"
#include "infra/rate_manager.hpp"

namespace litpipe::embedding {
namespace {

constexpr char kMagic[] = "LPEMB001";

void PutU32(std::string& out, std::uint32_t x) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<char>((x >> (8 * i)) & 0xff));
}

class Reader {
 public:
  explicit Reader(std::string_view in) : in_(in) {}
  std::string_view Take(std::size_t n) {
    if (in_.size() - pos_ < n) Fail(ErrorCode::kParse, "embeddings.bin is truncated");
    auto out = in_.substr(pos_, n);
    pos_ += n;
    return out;
  }
  std::uint32_t U32() {
    auto b = Take(4);
    std::uint32_t x = 0;
    for (int i = 0; i < 4; ++i) {
      x |= static_cast<std::uint32_t>(static_cast<unsigned char>(b[i])) << (8 * i);
    }
    return x;
  }
  bool done() const { return pos_ == in_.size(); }

 private:
  std::string_view in_;
  std::size_t pos_ = 0;
};

}  // namespace

EmbeddingMatrix EmbedCorpus(const std::vector<acquisition::Paper>& papers,
                            EmbeddingProvider& provider, EmbeddingCache* cache,
                            infra::RateManager* rate, const EmbedOptions& options,
                            EmbedStats* stats) {
  if (papers.empty()) Fail(ErrorCode::kInvalidInput, "cannot embed an empty corpus");
  EmbedStats local;
  EmbedStats& s = stats ? *stats : local;
  s = {};
  const std::string model = provider.model_id();

  std::vector<std::optional<EmbeddingVector>> raw(papers.size());
  std::vector<Digest256> hashes(papers.size());
  // Distinct missing texts, in first-seen order, with the rows they fill.
  std::vector<std::string> miss_texts;
  std::vector<std::vector<std::size_t>> miss_rows;
  std::map<Digest256, std::size_t> miss_slot;
  for (std::size_t i = 0; i < papers.size(); ++i) {
    auto text = PaperText(papers[i]);
    hashes[i] = Sha256(text);
    if (cache) raw[i] = cache->Get(model, hashes[i]);
    if (raw[i]) {
      ++s.cache_hits;
      continue;
    }
    auto [it, fresh] = miss_slot.emplace(hashes[i], miss_texts.size());
    if (fresh) {
      miss_texts.push_back(std::move(text));
      miss_rows.emplace_back();
    }
    miss_rows[it->second].push_back(i);
  }

  const std::size_t limit = std::max<std::size_t>(1, provider.max_batch());
  const std::size_t n_batches = (miss_texts.size() + limit - 1) / limit;
  std::vector<std::vector<EmbeddingVector>> results(n_batches);
  std::vector<std::string> failures(n_batches);
  auto run_batch = [&](std::size_t b) {
    std::vector<std::string> chunk(
        miss_texts.begin() + static_cast<std::ptrdiff_t>(b * limit),
        miss_texts.begin() + static_cast<std::ptrdiff_t>(std::min(miss_texts.size(), (b + 1) * limit)));
    try {
      results[b] = EmbedBatch(provider, chunk, rate);
    } catch (const Error& e) {
      failures[b] = e.what();
    }
  };
  const std::size_t width = std::max<std::size_t>(1, options.max_concurrency);
  for (std::size_t begin = 0; begin < n_batches; begin += width) {
    std::vector<std::future<void>> inflight;
    for (std::size_t b = begin; b < std::min(n_batches, begin + width); ++b) {
      inflight.push_back(std::async(width == 1 ? std::launch::deferred : std::launch::async,
                                    run_batch, b));
    }
    for (auto& f : inflight) f.get();
  }

  std::vector<std::string> missing;
  std::string first_failure;
  for (std::size_t b = 0; b < n_batches; ++b) {
    const std::size_t base = b * limit;
    if (!failures[b].empty()) {
      if (first_failure.empty()) first_failure = failures[b];
      for (std::size_t k = base; k < std::min(miss_texts.size(), base + limit); ++k) {
        for (auto row : miss_rows[k]) missing.push_back(papers[row].id);
      }
      continue;
    }
    ++s.provider_calls;
    s.texts_sent += results[b].size();
    for (std::size_t k = 0; k < results[b].size(); ++k) {
      const auto& rows = miss_rows[base + k];
      if (cache) cache->Put(model, hashes[rows.front()], results[b][k]);
      for (auto row : rows) raw[row] = results[b][k];
    }
  }
  if (!missing.empty()) {
    std::sort(missing.begin(), missing.end());
    std::string list;
    for (const auto& id : missing) list += (list.empty() ? "" : ", ") + id;
    Fail(ErrorCode::kEmbeddingIncomplete, std::to_string(missing.size()) +
                                              " papers without embeddings (" + first_failure +
                                              "): " + list);
  }

  EmbeddingMatrix m;
  m.model_id = model;
  m.normalized = true;
  m.vectors.reserve(papers.size());
  for (std::size_t i = 0; i < papers.size(); ++i) {
    m.vectors.push_back(Normalized(*raw[i]));
    m.paper_ids.push_back(papers[i].id);
  }
  return m;
}

std::string SerializeMatrix(const EmbeddingMatrix& m) {
  if (m.paper_ids.size() != m.vectors.size()) {
    Fail(ErrorCode::kInternalConsistency, "embedding ids and vectors are misaligned");
  }
  std::string out(kMagic, 8);
  PutU32(out, static_cast<std::uint32_t>(m.vectors.size()));
  PutU32(out, static_cast<std::uint32_t>(kEmbeddingDim));
  PutU32(out, m.normalized ? 1 : 0);
  PutU32(out, static_cast<std::uint32_t>(m.model_id.size()));
  out += m.model_id;
  for (std::size_t i = 0; i < m.vectors.size(); ++i) {
    PutU32(out, static_cast<std::uint32_t>(m.paper_ids[i].size()));
    out += m.paper_ids[i];
    out += EncodeVector(m.vectors[i]);
  }
  return out;
}

EmbeddingMatrix DeserializeMatrix(std::string_view bytes) {
  Reader r(bytes);
  if (r.Take(8) != std::string_view(kMagic, 8)) Fail(ErrorCode::kParse, "not an embeddings file");
  EmbeddingMatrix m;
  const std::uint32_t n = r.U32();
  if (r.U32() != kEmbeddingDim) Fail(ErrorCode::kParse, "embeddings file has the wrong dim");
  m.normalized = r.U32() != 0;
  m.model_id = std::string(r.Take(r.U32()));
  for (std::uint32_t i = 0; i < n; ++i) {
    m.paper_ids.emplace_back(r.Take(r.U32()));
    m.vectors.push_back(DecodeVector(r.Take(kEmbeddingDim * 4)));
  }
  if (!r.done()) Fail(ErrorCode::kParse, "trailing bytes in embeddings file");
  return m;
}

}  // namespace litpipe::embedding

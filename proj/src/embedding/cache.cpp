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

#include "embedding/cache.hpp"

#include <cstring>
#include <fstream>
#include <mutex>

#include "common/error.hpp"

namespace litpipe::embedding {
namespace {

void PutU32(std::string& out, std::uint32_t x) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<char>((x >> (8 * i)) & 0xff));
}

std::uint32_t GetU32(std::string_view in, std::size_t at) {
  std::uint32_t x = 0;
  for (int i = 0; i < 4; ++i) {
    x |= static_cast<std::uint32_t>(static_cast<unsigned char>(in[at + i])) << (8 * i);
  }
  return x;
}

std::string HashKey(const Digest256& h) {
  return std::string(reinterpret_cast<const char*>(h.data()), h.size());
}

std::string SafeName(const std::string& model_id) {
  std::string out;
  for (char c : model_id) {
    bool ok = std::isalnum(static_cast<unsigned char>(c)) || c == '-' || c == '_' || c == '.';
    out.push_back(ok ? c : '_');
  }
  return out.empty() ? "model" : out;
}

}  // namespace

std::string EncodeVector(const EmbeddingVector& v) {
  std::string out;
  out.reserve(kEmbeddingDim * 4);
  for (float f : v) {
    std::uint32_t bits;
    std::memcpy(&bits, &f, 4);
    PutU32(out, bits);
  }
  return out;
}

EmbeddingVector DecodeVector(std::string_view bytes) {
  if (bytes.size() != kEmbeddingDim * 4) {
    Fail(ErrorCode::kParse, "encoded vector has " + std::to_string(bytes.size()) + " bytes");
  }
  EmbeddingVector v;
  for (std::size_t d = 0; d < kEmbeddingDim; ++d) {
    std::uint32_t bits = GetU32(bytes, d * 4);
    std::memcpy(&v[d], &bits, 4);
  }
  return v;
}

EmbeddingCache::EmbeddingCache(std::optional<std::filesystem::path> dir,
                               std::size_t memory_bytes)
    : dir_(std::move(dir)), memory_(infra::EmbeddingStoreLimits(memory_bytes)) {
  if (dir_) std::filesystem::create_directories(*dir_);
}

std::filesystem::path EmbeddingCache::RecPath(const std::string& model_id) const {
  return *dir_ / (SafeName(model_id) + ".rec");
}

std::filesystem::path EmbeddingCache::IdxPath(const std::string& model_id) const {
  return *dir_ / (SafeName(model_id) + ".idx");
}

EmbeddingCache::ModelIndex& EmbeddingCache::LoadLocked(const std::string& model_id) {
  auto it = models_.find(model_id);
  if (it != models_.end()) return it->second;
  ModelIndex index;
  if (dir_) {
    std::error_code ec;
    auto rec_size = std::filesystem::file_size(RecPath(model_id), ec);
    // A torn trailing record (crash mid-append) is ignored and overwritten.
    index.rec_size = ec ? 0 : rec_size - rec_size % kRecordBytes;
    std::ifstream idx(IdxPath(model_id), std::ios::binary);
    char entry[40];
    while (idx.read(entry, sizeof entry)) {
      std::uint64_t off = 0;
      for (int i = 0; i < 8; ++i) {
        off |= static_cast<std::uint64_t>(static_cast<unsigned char>(entry[32 + i])) << (8 * i);
      }
      if (off % kRecordBytes == 0 && off + kRecordBytes <= index.rec_size) {
        index.offsets[std::string(entry, 32)] = off;
      }
    }
  }
  return models_.emplace(model_id, std::move(index)).first->second;
}

std::optional<EmbeddingVector> EmbeddingCache::Get(const std::string& model_id,
                                                   const Digest256& hash) {
  const std::string key = HashKey(hash);
  const std::string mem_key = model_id + '\n' + key;
  if (auto hit = memory_.Get(mem_key, TimePoint{})) return DecodeVector(*hit);
  if (!dir_) return std::nullopt;

  std::uint64_t offset;
  {
    std::unique_lock lock(mu_);
    auto& index = LoadLocked(model_id);
    auto it = index.offsets.find(key);
    if (it == index.offsets.end()) return std::nullopt;
    offset = it->second;
  }
  std::string record(kRecordBytes, '\0');
  {
    std::shared_lock lock(mu_);
    std::ifstream rec(RecPath(model_id), std::ios::binary);
    rec.seekg(static_cast<std::streamoff>(offset));
    if (!rec.read(record.data(), static_cast<std::streamsize>(record.size()))) {
      return std::nullopt;
    }
  }
  if (record.compare(0, 32, key) != 0) return std::nullopt;
  auto bytes = record.substr(32);
  memory_.Put(mem_key, bytes, TimePoint{});
  return DecodeVector(bytes);
}

void EmbeddingCache::Put(const std::string& model_id, const Digest256& hash,
                         const EmbeddingVector& v) {
  CheckFinite(v);
  const std::string key = HashKey(hash);
  const std::string bytes = EncodeVector(v);
  memory_.Put(model_id + '\n' + key, bytes, TimePoint{});
  std::unique_lock lock(mu_);
  auto& index = LoadLocked(model_id);
  if (!dir_) {
    index.offsets[key] = index.rec_size;
    index.rec_size += kRecordBytes;
    return;
  }
  const std::uint64_t offset = index.rec_size;
  {
    std::fstream rec(RecPath(model_id), std::ios::binary | std::ios::in | std::ios::out);
    if (!rec) rec.open(RecPath(model_id), std::ios::binary | std::ios::out);
    rec.seekp(static_cast<std::streamoff>(offset));
    rec.write(key.data(), 32);
    rec.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    rec.flush();
    if (!rec) Fail(ErrorCode::kIo, "cannot append to " + RecPath(model_id).string());
  }
  std::string entry = key;
  for (int i = 0; i < 8; ++i) entry.push_back(static_cast<char>((offset >> (8 * i)) & 0xff));
  std::ofstream idx(IdxPath(model_id), std::ios::binary | std::ios::app);
  idx.write(entry.data(), static_cast<std::streamsize>(entry.size()));
  idx.flush();
  if (!idx) Fail(ErrorCode::kIo, "cannot append to " + IdxPath(model_id).string());
  index.offsets[key] = offset;
  index.rec_size = offset + kRecordBytes;
}

std::size_t EmbeddingCache::Size(const std::string& model_id) {
  std::unique_lock lock(mu_);
  return LoadLocked(model_id).offsets.size();
}

}  // namespace litpipe::embedding

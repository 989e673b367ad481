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

#include "infra/api_cache.hpp"

#include "common/files.hpp"
#include "common/sha256.hpp"

namespace litpipe::infra {

ApiCache::ApiCache(std::optional<std::filesystem::path> dir, CacheLimits limits)
    : dir_(std::move(dir)), memory_(limits) {
  if (dir_) std::filesystem::create_directories(*dir_);
}

std::string ApiCache::Key(const std::string& source, const std::string& query,
                          const std::string& page) {
  return Sha256Hex(source + '\n' + query + '\n' + page);
}

std::optional<std::string> ApiCache::GetFresh(const std::string& key, TimePoint now) {
  if (auto hit = memory_.Get(key, now)) return hit;
  if (!dir_) return std::nullopt;
  auto meta_path = *dir_ / (key + ".meta.json");
  auto body_path = *dir_ / (key + ".body");
  if (!std::filesystem::exists(meta_path) || !std::filesystem::exists(body_path)) {
    return std::nullopt;
  }
  try {
    auto meta = nlohmann::json::parse(files::ReadFile(meta_path));
    auto inserted = ParseUtc(meta.at("inserted_at").get<std::string>());
    auto ttl = memory_.limits().ttl;
    if (ttl && !(now - inserted < *ttl)) return std::nullopt;
    memory_.Put(key, files::ReadFile(body_path), inserted);
    return memory_.Get(key, now);
  } catch (const std::exception&) {
    return std::nullopt;
  }
}

std::optional<std::string> ApiCache::GetStale(const std::string& key) {
  if (!dir_) return std::nullopt;
  auto body_path = *dir_ / (key + ".body");
  if (!std::filesystem::exists(body_path)) return std::nullopt;
  return files::ReadFile(body_path);
}

void ApiCache::Put(const std::string& key, const std::string& value,
                   const nlohmann::json& metadata, TimePoint now) {
  memory_.Put(key, value, now);
  if (!dir_) return;
  nlohmann::json meta = metadata;
  meta["inserted_at"] = FormatUtc(now);
  meta["bytes"] = value.size();
  files::WriteFileAtomic(*dir_ / (key + ".body"), value);
  files::WriteFileAtomic(*dir_ / (key + ".meta.json"), meta.dump(2) + "\n");
}

}  // namespace litpipe::infra

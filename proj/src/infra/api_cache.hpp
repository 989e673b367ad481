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

#include <filesystem>
#include <optional>
#include <string>

#include <json.hpp>

#include "infra/cache.hpp"

namespace litpipe::infra {

// Two-tier store for source responses: an in-memory TTL+LRU front and,
// when a directory is given, files under <dir>/<key>.body and
// <key>.meta.json. Fresh lookups honour the 24h TTL; stale lookups read the
// disk copy regardless of age and exist only for degraded-mode serving.
class ApiCache {
 public:
  explicit ApiCache(std::optional<std::filesystem::path> dir,
                    CacheLimits limits = ApiStoreLimits());

  static std::string Key(const std::string& source, const std::string& query,
                         const std::string& page);

  std::optional<std::string> GetFresh(const std::string& key, TimePoint now);
  std::optional<std::string> GetStale(const std::string& key);
  void Put(const std::string& key, const std::string& value, const nlohmann::json& metadata,
           TimePoint now);

 private:
  std::optional<std::filesystem::path> dir_;
  TtlLruCache memory_;
};

}  // namespace litpipe::infra

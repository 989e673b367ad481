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
#include <list>
#include <mutex>
#include <optional>
#include <string>
#include <unordered_map>

#include "common/clock.hpp"

namespace litpipe::infra {

struct CacheEntry {
  std::string key;
  std::string value;
  TimePoint inserted_at;
  TimePoint last_access;
};

struct CacheLimits {
  // nullopt means unbounded along that axis.
  std::optional<std::size_t> max_entries;
  std::optional<std::size_t> max_bytes;
  // nullopt means entries never expire.
  std::optional<Seconds> ttl;
};

// The API response store: 24 hour TTL, bounded by entry count.
CacheLimits ApiStoreLimits(std::size_t max_entries = 4096);
// The embedding store: no TTL, bounded by payload bytes.
CacheLimits EmbeddingStoreLimits(std::size_t max_bytes = 64u << 20);

// In-memory TTL + LRU store. An entry is live while now - inserted_at < ttl;
// expired entries are purged when observed. When a put pushes the store over
// its limits, the least recently accessed entries are evicted first.
// Thread-safe; all mutation is serialized.
class TtlLruCache {
 public:
  explicit TtlLruCache(CacheLimits limits) : limits_(limits) {}

  std::optional<std::string> Get(const std::string& key, TimePoint now);

  // Re-inserting an existing key replaces the value and resets inserted_at.
  // Throws Error(kOversize) if the value alone exceeds max_bytes.
  void Put(const std::string& key, std::string value, TimePoint now);

  bool Contains(const std::string& key) const;
  std::size_t size() const;
  std::size_t bytes() const;
  const CacheLimits& limits() const { return limits_; }

 private:
  using Order = std::list<CacheEntry>;

  void EraseLocked(Order::iterator it);
  void EvictLocked();

  CacheLimits limits_;
  mutable std::mutex mu_;
  // Front = most recently accessed.
  Order order_;
  std::unordered_map<std::string, Order::iterator> index_;
  std::size_t bytes_ = 0;
};

}  // namespace litpipe::infra

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

#include "infra/cache.hpp"

#include "common/error.hpp"

namespace litpipe::infra {

CacheLimits ApiStoreLimits(std::size_t max_entries) {
  return {max_entries, std::nullopt, Seconds(24.0 * 3600.0)};
}

CacheLimits EmbeddingStoreLimits(std::size_t max_bytes) {
  return {std::nullopt, max_bytes, std::nullopt};
}

std::optional<std::string> TtlLruCache::Get(const std::string& key, TimePoint now) {
  std::lock_guard lock(mu_);
  auto found = index_.find(key);
  if (found == index_.end()) return std::nullopt;
  auto it = found->second;
  if (limits_.ttl && !(now - it->inserted_at < *limits_.ttl)) {
    EraseLocked(it);
    return std::nullopt;
  }
  if (now > it->last_access) it->last_access = now;
  order_.splice(order_.begin(), order_, it);
  return it->value;
}

void TtlLruCache::Put(const std::string& key, std::string value, TimePoint now) {
  if (limits_.max_bytes && value.size() > *limits_.max_bytes) {
    Fail(ErrorCode::kOversize, "cache value of " + std::to_string(value.size()) +
                                   " bytes exceeds store capacity");
  }
  std::lock_guard lock(mu_);
  if (auto found = index_.find(key); found != index_.end()) EraseLocked(found->second);
  bytes_ += value.size();
  order_.push_front(CacheEntry{key, std::move(value), now, now});
  index_.emplace(key, order_.begin());
  EvictLocked();
}

bool TtlLruCache::Contains(const std::string& key) const {
  std::lock_guard lock(mu_);
  return index_.count(key) > 0;
}

std::size_t TtlLruCache::size() const {
  std::lock_guard lock(mu_);
  return order_.size();
}

std::size_t TtlLruCache::bytes() const {
  std::lock_guard lock(mu_);
  return bytes_;
}

void TtlLruCache::EraseLocked(Order::iterator it) {
  bytes_ -= it->value.size();
  index_.erase(it->key);
  order_.erase(it);
}

void TtlLruCache::EvictLocked() {
  auto over = [&] {
    return (limits_.max_entries && order_.size() > *limits_.max_entries) ||
           (limits_.max_bytes && bytes_ > *limits_.max_bytes);
  };
  while (over() && !order_.empty()) EraseLocked(std::prev(order_.end()));
}

}  // namespace litpipe::infra

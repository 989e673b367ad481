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

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "acquisition/types.hpp"
#include "infra/http.hpp"

namespace litpipe::acquisition {

// One page of source records, still in the source's own field layout
// (Semantic Scholar JSON objects; arXiv entries converted to
// {id, title, summary, published, authors[], journal_ref}).
struct RawPaperBatch {
  std::vector<nlohmann::json> records;
  // Empty = first page. nullopt = end of results.
  std::optional<std::string> next_page;
};

nlohmann::json BatchToJson(const RawPaperBatch& batch);
RawPaperBatch BatchFromJson(const nlohmann::json& j);

class PaperSource {
 public:
  virtual ~PaperSource() = default;
  virtual Source source() const = 0;
  // page_token "" requests the first page. Throws kRateLimited/kTransient
  // (retryable) or kParse/kProtocol (not).
  virtual RawPaperBatch Fetch(const std::string& query, const std::string& page_token) = 0;
};

// Semantic Scholar Graph API paper search. API key, when set, goes in the
// x-api-key header.
std::unique_ptr<PaperSource> MakeSemanticScholarSource(std::shared_ptr<infra::HttpTransport> http,
                                                       std::optional<std::string> api_key,
                                                       std::size_t page_size = 100);

// arXiv Atom query API.
std::unique_ptr<PaperSource> MakeArxivSource(std::shared_ptr<infra::HttpTransport> http,
                                             std::size_t page_size = 100);

// Parses an arXiv Atom feed. Throws Error(kParse) on malformed XML.
RawPaperBatch ParseArxivFeed(const std::string& xml, std::size_t start, std::size_t page_size);

// Parses a Semantic Scholar search response body.
RawPaperBatch ParseSemanticScholarResponse(const std::string& body);

// Offline source serving the records stored for its source in a fixture
// file: {"semantic_scholar": [...], "arxiv": [...]}. Every query gets the
// full list as a single page.
std::unique_ptr<PaperSource> MakeFixtureSource(Source source, const nlohmann::json& fixture);

}  // namespace litpipe::acquisition

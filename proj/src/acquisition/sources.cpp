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

#include "acquisition/sources.hpp"

#include <sstream>

#include <boost/property_tree/ptree.hpp>
#include <boost/property_tree/xml_parser.hpp>
#include <fmt/format.h>

#include "common/error.hpp"
#include "common/text.hpp"

namespace litpipe::acquisition {
namespace {

constexpr const char* kS2Fields =
    "title,authors,year,abstract,citationCount,venue,externalIds,url,publicationDate";

class SemanticScholarSource final : public PaperSource {
 public:
  SemanticScholarSource(std::shared_ptr<infra::HttpTransport> http,
                        std::optional<std::string> api_key, std::size_t page_size)
      : http_(std::move(http)), api_key_(std::move(api_key)), page_size_(page_size) {}

  Source source() const override { return Source::kSemanticScholar; }

  RawPaperBatch Fetch(const std::string& query, const std::string& page_token) override {
    infra::HttpRequest req;
    req.url = fmt::format(
        "https://api.semanticscholar.org/graph/v1/paper/search?query={}&offset={}&limit={}"
        "&fields={}",
        infra::UrlEncode(query), page_token.empty() ? "0" : page_token, page_size_, kS2Fields);
    if (api_key_) req.headers["x-api-key"] = *api_key_;
    auto resp = http_->Send(req);
    infra::ThrowForStatus(resp, "semantic scholar search");
    return ParseSemanticScholarResponse(resp.body);
  }

 private:
  std::shared_ptr<infra::HttpTransport> http_;
  std::optional<std::string> api_key_;
  std::size_t page_size_;
};

class ArxivSource final : public PaperSource {
 public:
  ArxivSource(std::shared_ptr<infra::HttpTransport> http, std::size_t page_size)
      : http_(std::move(http)), page_size_(page_size) {}

  Source source() const override { return Source::kArxiv; }

  RawPaperBatch Fetch(const std::string& query, const std::string& page_token) override {
    std::size_t start = page_token.empty() ? 0 : std::stoul(page_token);
    std::string q = query;
    std::erase(q, '"');
    infra::HttpRequest req;
    req.url = fmt::format("https://export.arxiv.org/api/query?search_query=all:{}&start={}"
                          "&max_results={}",
                          infra::UrlEncode(q), start, page_size_);
    auto resp = http_->Send(req);
    infra::ThrowForStatus(resp, "arxiv query");
    return ParseArxivFeed(resp.body, start, page_size_);
  }

 private:
  std::shared_ptr<infra::HttpTransport> http_;
  std::size_t page_size_;
};

class FixtureSource final : public PaperSource {
 public:
  FixtureSource(Source source, std::vector<nlohmann::json> records)
      : source_(source), records_(std::move(records)) {}

  Source source() const override { return source_; }

  RawPaperBatch Fetch(const std::string&, const std::string& page_token) override {
    if (!page_token.empty()) return {{}, std::nullopt};
    return {records_, std::nullopt};
  }

 private:
  Source source_;
  std::vector<nlohmann::json> records_;
};

}  // namespace

nlohmann::json BatchToJson(const RawPaperBatch& batch) {
  nlohmann::json j;
  j["records"] = batch.records;
  j["next_page"] = batch.next_page ? nlohmann::json(*batch.next_page) : nlohmann::json(nullptr);
  return j;
}

RawPaperBatch BatchFromJson(const nlohmann::json& j) {
  RawPaperBatch b;
  for (const auto& r : j.at("records")) b.records.push_back(r);
  if (!j.at("next_page").is_null()) b.next_page = j.at("next_page").get<std::string>();
  return b;
}

RawPaperBatch ParseSemanticScholarResponse(const std::string& body) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(body);
  } catch (const nlohmann::json::exception& e) {
    Fail(ErrorCode::kParse, std::string("semantic scholar payload is not JSON: ") + e.what());
  }
  if (!j.is_object()) Fail(ErrorCode::kParse, "semantic scholar payload is not an object");
  RawPaperBatch batch;
  if (j.contains("data")) {
    if (!j["data"].is_array()) Fail(ErrorCode::kParse, "semantic scholar 'data' is not an array");
    for (const auto& r : j["data"]) {
      if (!r.is_object()) Fail(ErrorCode::kParse, "semantic scholar record is not an object");
      batch.records.push_back(r);
    }
  }
  if (j.contains("next") && j["next"].is_number_integer()) {
    batch.next_page = std::to_string(j["next"].get<long long>());
  }
  return batch;
}

RawPaperBatch ParseArxivFeed(const std::string& xml, std::size_t start, std::size_t page_size) {
  namespace pt = boost::property_tree;
  pt::ptree tree;
  try {
    std::istringstream in(xml);
    pt::read_xml(in, tree, pt::xml_parser::trim_whitespace);
  } catch (const pt::xml_parser_error& e) {
    Fail(ErrorCode::kParse, std::string("arxiv payload is not XML: ") + e.what());
  }
  auto feed = tree.get_child_optional("feed");
  if (!feed) Fail(ErrorCode::kParse, "arxiv payload has no <feed>");

  RawPaperBatch batch;
  for (const auto& [name, node] : *feed) {
    if (name != "entry") continue;
    nlohmann::json rec;
    rec["id"] = node.get<std::string>("id", "");
    rec["title"] = node.get<std::string>("title", "");
    rec["summary"] = node.get<std::string>("summary", "");
    rec["published"] = node.get<std::string>("published", "");
    auto authors = nlohmann::json::array();
    for (const auto& [child, sub] : node) {
      if (child == "author") authors.push_back(sub.get<std::string>("name", ""));
    }
    rec["authors"] = authors;
    if (auto jr = node.get_optional<std::string>("arxiv:journal_ref")) rec["journal_ref"] = *jr;
    batch.records.push_back(std::move(rec));
  }
  std::size_t total = feed->get<std::size_t>("opensearch:totalResults", 0);
  std::size_t next = start + batch.records.size();
  if (!batch.records.empty() && batch.records.size() == page_size && next < total) {
    batch.next_page = std::to_string(next);
  }
  return batch;
}

std::unique_ptr<PaperSource> MakeSemanticScholarSource(std::shared_ptr<infra::HttpTransport> http,
                                                       std::optional<std::string> api_key,
                                                       std::size_t page_size) {
  return std::make_unique<SemanticScholarSource>(std::move(http), std::move(api_key), page_size);
}

std::unique_ptr<PaperSource> MakeArxivSource(std::shared_ptr<infra::HttpTransport> http,
                                             std::size_t page_size) {
  return std::make_unique<ArxivSource>(std::move(http), page_size);
}

std::unique_ptr<PaperSource> MakeFixtureSource(Source source, const nlohmann::json& fixture) {
  const char* key = source == Source::kSemanticScholar ? "semantic_scholar" : "arxiv";
  std::vector<nlohmann::json> records;
  if (fixture.contains(key)) {
    for (const auto& r : fixture.at(key)) records.push_back(r);
  }
  return std::make_unique<FixtureSource>(source, std::move(records));
}

}  // namespace litpipe::acquisition

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

#include "acquisition/corpus_io.hpp"

#include "common/error.hpp"

namespace litpipe::acquisition {
namespace {

nlohmann::ordered_json OptionalString(const std::optional<std::string>& s) {
  return s ? nlohmann::ordered_json(*s) : nlohmann::ordered_json(nullptr);
}

std::optional<std::string> ReadOptional(const nlohmann::json& j, const char* key) {
  if (!j.contains(key) || j[key].is_null()) return std::nullopt;
  return j[key].get<std::string>();
}

}  // namespace

nlohmann::ordered_json CorpusToJson(const Corpus& corpus) {
  nlohmann::ordered_json j;
  j["schema"] = kCorpusSchema;
  j["topic"] = corpus.topic;
  j["created_at"] = corpus.created_at;
  j["degraded"] = corpus.degraded;
  j["stats"] = {{"fetched", corpus.stats.fetched},
                {"deduplicated", corpus.stats.deduplicated},
                {"filtered", corpus.stats.filtered},
                {"final", corpus.stats.final}};
  auto& queries = j["queries"] = nlohmann::ordered_json::array();
  for (std::size_t i = 0; i < corpus.queries.queries.size(); ++i) {
    queries.push_back({{"query", corpus.queries.queries[i]},
                       {"rule", RuleName(corpus.queries.provenance[i])}});
  }
  auto& papers = j["papers"] = nlohmann::ordered_json::array();
  for (const auto& p : corpus.papers) {
    papers.push_back({{"id", p.id},
                      {"title", p.title},
                      {"authors", p.authors},
                      {"year", p.year},
                      {"abstract", p.abstract},
                      {"citation_count", p.citation_count},
                      {"venue", OptionalString(p.venue)},
                      {"source", SourceName(p.source)},
                      {"source_id", p.source_id},
                      {"url", OptionalString(p.url)}});
  }
  return j;
}

Corpus CorpusFromJson(const nlohmann::json& j) {
  try {
    if (j.at("schema").get<int>() != kCorpusSchema) {
      Fail(ErrorCode::kParse, "unsupported corpus schema");
    }
    Corpus c;
    c.topic = j.at("topic").get<std::string>();
    c.created_at = j.at("created_at").get<std::string>();
    c.degraded = j.value("degraded", false);
    const auto& s = j.at("stats");
    c.stats = {s.at("fetched").get<std::size_t>(), s.at("deduplicated").get<std::size_t>(),
               s.at("filtered").get<std::size_t>(), s.at("final").get<std::size_t>()};
    for (const auto& q : j.at("queries")) {
      c.queries.queries.push_back(q.at("query").get<std::string>());
      auto rule = q.at("rule").get<std::string>();
      ExpansionRule r = ExpansionRule::kVerbatim;
      for (auto candidate : {ExpansionRule::kVerbatim, ExpansionRule::kSynonym,
                             ExpansionRule::kRelatedTerm, ExpansionRule::kBooleanCompound,
                             ExpansionRule::kAcronym}) {
        if (RuleName(candidate) == rule) r = candidate;
      }
      c.queries.provenance.push_back(r);
    }
    for (const auto& pj : j.at("papers")) {
      Paper p;
      p.id = pj.at("id").get<std::string>();
      p.title = pj.at("title").get<std::string>();
      p.authors = pj.at("authors").get<std::vector<std::string>>();
      p.year = pj.at("year").get<int>();
      p.abstract = pj.at("abstract").get<std::string>();
      p.citation_count = pj.at("citation_count").get<std::int64_t>();
      p.venue = ReadOptional(pj, "venue");
      auto src = SourceFromName(pj.at("source").get<std::string>());
      if (!src) Fail(ErrorCode::kParse, "unknown source in corpus");
      p.source = *src;
      p.source_id = pj.at("source_id").get<std::string>();
      p.url = ReadOptional(pj, "url");
      c.papers.push_back(std::move(p));
    }
    if (c.stats.final != c.papers.size()) {
      Fail(ErrorCode::kParse, "corpus stats.final does not match paper count");
    }
    return c;
  } catch (const nlohmann::json::exception& e) {
    Fail(ErrorCode::kParse, std::string("malformed corpus.json: ") + e.what());
  }
}

std::string SerializeCorpus(const Corpus& corpus) { return CorpusToJson(corpus).dump(2) + "\n"; }

}  // namespace litpipe::acquisition

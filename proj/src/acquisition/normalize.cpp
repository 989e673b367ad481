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

#include "acquisition/normalize.hpp"

#include <cctype>

#include "common/sha256.hpp"
#include "common/text.hpp"

namespace litpipe::acquisition {
namespace {

std::string StringField(const nlohmann::json& j, const char* key) {
  if (!j.contains(key) || !j[key].is_string()) return {};
  return j[key].get<std::string>();
}

std::optional<int> YearFromDate(const std::string& date) {
  if (date.size() < 4) return std::nullopt;
  for (int i = 0; i < 4; ++i) {
    if (!std::isdigit(static_cast<unsigned char>(date[i]))) return std::nullopt;
  }
  return std::stoi(date.substr(0, 4));
}

std::optional<std::string> NonEmpty(std::string s) {
  s = text::CollapseWhitespace(text::Trim(s));
  if (s.empty()) return std::nullopt;
  return s;
}

// "http://arxiv.org/abs/2210.03629v3" -> "2210.03629"
std::string ArxivId(const std::string& raw_id) {
  std::string id = raw_id;
  if (auto pos = id.find("/abs/"); pos != std::string::npos) id = id.substr(pos + 5);
  if (auto v = id.rfind('v'); v != std::string::npos && v + 1 < id.size()) {
    bool digits = true;
    for (std::size_t i = v + 1; i < id.size(); ++i) {
      digits = digits && std::isdigit(static_cast<unsigned char>(id[i]));
    }
    if (digits && v > 0) id = id.substr(0, v);
  }
  return id;
}

}  // namespace

NormalizeResult NormalizeRecord(const nlohmann::json& raw, Source source) {
  Paper p;
  p.source = source;
  p.title = text::CollapseWhitespace(text::Trim(StringField(raw, "title")));
  if (p.title.empty()) return {std::nullopt, "no-title"};

  std::optional<int> year;
  if (source == Source::kSemanticScholar) {
    if (raw.contains("year") && raw["year"].is_number_integer()) year = raw["year"].get<int>();
    if (!year) year = YearFromDate(StringField(raw, "publicationDate"));
    p.abstract = text::CollapseWhitespace(text::Trim(StringField(raw, "abstract")));
    if (raw.contains("citationCount") && raw["citationCount"].is_number_integer()) {
      p.citation_count = std::max<std::int64_t>(0, raw["citationCount"].get<std::int64_t>());
    }
    if (raw.contains("authors") && raw["authors"].is_array()) {
      for (const auto& a : raw["authors"]) {
        std::string name = a.is_object() ? StringField(a, "name")
                                         : (a.is_string() ? a.get<std::string>() : "");
        if (auto n = NonEmpty(name)) p.authors.push_back(*n);
      }
    }
    p.venue = NonEmpty(StringField(raw, "venue"));
    p.url = NonEmpty(StringField(raw, "url"));
    p.source_id = StringField(raw, "paperId");
    if (p.source_id.empty()) p.source_id = "t-" + Sha256Hex(p.title).substr(0, 16);
    p.id = "s2:" + p.source_id;
  } else {
    year = YearFromDate(StringField(raw, "published"));
    p.abstract = text::CollapseWhitespace(text::Trim(StringField(raw, "summary")));
    if (raw.contains("authors") && raw["authors"].is_array()) {
      for (const auto& a : raw["authors"]) {
        if (a.is_string()) {
          if (auto n = NonEmpty(a.get<std::string>())) p.authors.push_back(*n);
        }
      }
    }
    p.venue = NonEmpty(StringField(raw, "journal_ref"));
    p.url = NonEmpty(StringField(raw, "id"));
    p.source_id = ArxivId(StringField(raw, "id"));
    if (p.source_id.empty()) p.source_id = "t-" + Sha256Hex(p.title).substr(0, 16);
    p.id = "arxiv:" + p.source_id;
  }
  if (!year) return {std::nullopt, "no-year"};
  p.year = *year;
  return {std::move(p), ""};
}

}  // namespace litpipe::acquisition

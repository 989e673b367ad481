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

#include "writer/citations.hpp"

#include <algorithm>
#include <regex>

#include "common/text.hpp"

namespace litpipe::writer {
namespace {

std::string StripEtAl(std::string s) {
  for (const char* marker : {" et al.", " et al", " and ", " & "}) {
    if (auto pos = s.find(marker); pos != std::string::npos) s.erase(pos);
  }
  return text::Trim(s);
}

std::optional<CitationKey> ParsePart(const std::string& part) {
  static const std::regex kPart(R"(^\s*([^,\d][^,]*?),\s*(\d{4})[a-z]?\s*$)");
  std::smatch m;
  if (!std::regex_match(part, m, kPart)) return std::nullopt;
  CitationKey key{StripEtAl(m[1].str()), std::stoi(m[2].str())};
  if (key.author_token.empty()) return std::nullopt;
  return key;
}

std::string SentenceAround(const std::string& text, std::size_t begin, std::size_t end) {
  auto is_break = [](char c) { return c == '\n'; };
  std::size_t s = begin;
  while (s > 0) {
    char c = text[s - 1];
    if (is_break(c)) break;
    if ((c == ' ') && s >= 2 && (text[s - 2] == '.' || text[s - 2] == '?' || text[s - 2] == '!')) {
      break;
    }
    --s;
  }
  std::size_t e = end;
  while (e < text.size() && !is_break(text[e])) {
    char c = text[e++];
    if ((c == '.' || c == '?' || c == '!') && (e == text.size() || text[e] == ' ')) break;
  }
  return text.substr(s, e - s);
}

std::set<std::string> SignificantWords(const std::string& s) {
  std::set<std::string> out;
  for (auto& w : text::Words(s)) {
    if (w.size() >= 3 && !text::IsStopword(w)) out.insert(w);
  }
  return out;
}

}  // namespace

std::string CitationKey::Normalized() const {
  return text::CollapseWhitespace(text::ToLower(author_token)) + "|" + std::to_string(year);
}

std::string FamilyName(const acquisition::Paper& paper) {
  if (!paper.authors.empty()) {
    std::string a = text::Trim(paper.authors.front());
    if (auto comma = a.find(','); comma != std::string::npos) return text::Trim(a.substr(0, comma));
    auto parts = text::SplitWhitespace(a);
    if (!parts.empty()) {
      std::string family = parts.back();
      std::erase_if(family, [](char c) { return c == '[' || c == ']' || c == ';' || c == ','; });
      if (!family.empty()) return family;
    }
  }
  for (const auto& w : text::Words(paper.title)) {
    if (w.size() >= 3 && !text::IsStopword(w)) return text::TitleCase(w);
  }
  return "Anonymous";
}

std::string RenderKey(const acquisition::Paper& paper) {
  const bool several = paper.authors.size() > 1;
  return "[" + FamilyName(paper) + (several ? " et al." : "") + ", " +
         std::to_string(paper.year) + "]";
}

std::vector<CitationOccurrence> FindCitations(const std::string& text) {
  std::vector<CitationOccurrence> out;
  std::size_t pos = 0;
  while ((pos = text.find('[', pos)) != std::string::npos) {
    auto close = text.find_first_of("[]\n", pos + 1);
    if (close == std::string::npos) break;
    if (text[close] != ']') {
      pos = close;
      continue;
    }
    const std::string inner = text.substr(pos + 1, close - pos - 1);
    std::vector<CitationKey> keys;
    bool all = !inner.empty();
    std::size_t start = 0;
    while (all) {
      auto semi = inner.find(';', start);
      auto key = ParsePart(inner.substr(start, semi == std::string::npos ? semi : semi - start));
      if (!key) all = false;
      else keys.push_back(*key);
      if (semi == std::string::npos) break;
      start = semi + 1;
    }
    if (all) {
      auto context = SentenceAround(text, pos, close + 1);
      for (auto& k : keys) out.push_back({std::move(k), pos, context});
    }
    pos = close + 1;
  }
  return out;
}

std::set<CitationKey> ExtractCitations(const std::string& text) {
  std::set<CitationKey> out;
  for (auto& occ : FindCitations(text)) out.insert(occ.key);
  return out;
}

Resolution ResolveCitations(const std::vector<CitationOccurrence>& occurrences,
                            const std::vector<acquisition::Paper>& corpus) {
  Resolution r;
  std::vector<std::string> families;
  families.reserve(corpus.size());
  for (const auto& p : corpus) families.push_back(text::ToLower(FamilyName(p)));

  for (const auto& occ : occurrences) {
    ++r.occurrences;
    const auto token = text::CollapseWhitespace(text::ToLower(occ.key.author_token));
    std::vector<std::size_t> candidates;
    for (std::size_t i = 0; i < corpus.size(); ++i) {
      if (corpus[i].year == occ.key.year && text::StartsWith(families[i], token)) {
        candidates.push_back(i);
      }
    }
    std::optional<std::size_t> pick;
    if (candidates.size() == 1) {
      pick = candidates.front();
    } else if (candidates.size() > 1) {
      const auto context = SignificantWords(occ.context);
      std::size_t best = 0, best_count = 0;
      for (auto i : candidates) {
        std::size_t overlap = 0;
        for (const auto& w : SignificantWords(corpus[i].title)) overlap += context.count(w);
        if (overlap > best) {
          best = overlap;
          best_count = 1;
          pick = i;
        } else if (overlap == best) {
          ++best_count;
        }
      }
      if (best == 0 || best_count != 1) pick.reset();
    }
    if (pick) {
      r.cited_ids.insert(corpus[*pick].id);
      r.resolved[occ.key].insert(corpus[*pick].id);
    } else if (candidates.empty()) {
      r.unresolved.insert(occ.key);
    } else {
      r.ambiguous.insert(occ.key);
    }
  }
  // A key that resolved somewhere is not reported as unresolved/ambiguous.
  for (const auto& [key, _] : r.resolved) {
    r.unresolved.erase(key);
    r.ambiguous.erase(key);
  }
  return r;
}

double Coverage(const Resolution& r, std::size_t corpus_size) {
  if (corpus_size == 0) return 0.0;
  return static_cast<double>(r.cited_ids.size()) / static_cast<double>(corpus_size);
}

}  // namespace litpipe::writer

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

#include "common/text.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <unordered_set>

namespace litpipe::text {
namespace {

bool IsSpace(unsigned char c) { return std::isspace(c) != 0; }

bool IsWordByte(unsigned char c) { return c >= 0x80 || std::isalnum(c) != 0; }

const std::unordered_set<std::string_view>& Stopwords() {
  static const std::unordered_set<std::string_view> kWords = {
      "a",        "about",   "above",    "across",  "after",    "again",
      "against",  "all",     "almost",   "also",    "although", "always",
      "am",       "among",   "an",       "and",     "another",  "any",
      "are",      "as",      "at",       "be",      "because",  "been",
      "before",   "being",   "below",    "between", "both",     "but",
      "by",       "can",     "could",    "did",     "do",       "does",
      "doing",    "down",    "during",   "each",    "either",   "etc",
      "even",     "ever",    "every",    "few",     "for",      "from",
      "further",  "had",     "has",      "have",    "having",   "he",
      "her",      "here",    "hers",     "him",     "his",      "how",
      "however",  "i",       "if",       "in",      "into",     "is",
      "it",       "its",     "itself",   "just",    "least",    "less",
      "many",     "may",     "me",       "might",   "more",     "most",
      "much",     "must",    "my",       "neither", "no",       "nor",
      "not",      "now",     "of",       "off",     "often",    "on",
      "once",     "one",     "only",     "or",      "other",    "others",
      "our",      "ours",    "out",      "over",    "own",      "per",
      "rather",   "same",    "several",  "she",     "should",   "since",
      "so",       "some",    "such",     "than",    "that",     "the",
      "their",    "theirs",  "them",     "then",    "there",    "therefore",
      "these",    "they",    "this",     "those",   "through",  "thus",
      "to",       "too",     "toward",   "towards", "under",    "until",
      "up",       "upon",    "us",       "use",     "used",     "uses",
      "using",    "very",    "via",      "was",     "we",       "well",
      "were",     "what",    "when",     "where",   "whether",  "which",
      "while",    "who",     "whom",     "whose",   "why",      "will",
      "with",     "within",  "without",  "would",   "yet",      "you",
      "your",     "yours",   "based",    "show",    "shows",    "propose",
      "proposed", "paper",   "present",  "presents", "approach", "new",
      "novel",    "results", "work",     "study",   "introduce", "existing",
  };
  return kWords;
}

}  // namespace

std::string Trim(std::string_view s) {
  auto begin = std::find_if_not(s.begin(), s.end(),
                                [](char c) { return IsSpace(static_cast<unsigned char>(c)); });
  auto end = std::find_if_not(s.rbegin(), s.rend(),
                              [](char c) { return IsSpace(static_cast<unsigned char>(c)); })
                 .base();
  return begin < end ? std::string(begin, end) : std::string();
}

std::string CollapseWhitespace(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  bool pending_space = false;
  for (char c : s) {
    if (IsSpace(static_cast<unsigned char>(c))) {
      pending_space = !out.empty();
      continue;
    }
    if (pending_space) out.push_back(' ');
    pending_space = false;
    out.push_back(c);
  }
  return out;
}

std::string ToLower(std::string_view s) {
  std::string out(s);
  for (auto& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

std::string NormalizeForMatch(std::string_view s) {
  std::string spaced;
  spaced.reserve(s.size());
  for (char c : s) {
    auto u = static_cast<unsigned char>(c);
    spaced.push_back(IsWordByte(u) ? static_cast<char>(std::tolower(u)) : ' ');
  }
  return CollapseWhitespace(spaced);
}

std::vector<std::string> Words(std::string_view s) {
  std::vector<std::string> words;
  std::string current;
  for (char c : s) {
    auto u = static_cast<unsigned char>(c);
    if (IsWordByte(u)) {
      current.push_back(static_cast<char>(std::tolower(u)));
    } else if (!current.empty()) {
      words.push_back(std::move(current));
      current.clear();
    }
  }
  if (!current.empty()) words.push_back(std::move(current));
  return words;
}

std::vector<std::string> SplitWhitespace(std::string_view s) {
  std::vector<std::string> parts;
  std::string current;
  for (char c : s) {
    if (IsSpace(static_cast<unsigned char>(c))) {
      if (!current.empty()) parts.push_back(std::move(current));
      current.clear();
    } else {
      current.push_back(c);
    }
  }
  if (!current.empty()) parts.push_back(std::move(current));
  return parts;
}

bool IsStopword(std::string_view word) { return Stopwords().count(word) > 0; }

std::string TitleCase(std::string_view s) {
  std::string out(s);
  bool at_start = true;
  for (auto& c : out) {
    auto u = static_cast<unsigned char>(c);
    if (IsSpace(u)) {
      at_start = true;
    } else if (at_start) {
      c = static_cast<char>(std::toupper(u));
      at_start = false;
    }
  }
  return out;
}

std::string Join(const std::vector<std::string>& parts, std::string_view sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out.append(sep);
    out.append(parts[i]);
  }
  return out;
}

bool StartsWith(std::string_view s, std::string_view prefix) {
  return s.substr(0, prefix.size()) == prefix;
}

}  // namespace litpipe::text

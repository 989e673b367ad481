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

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "acquisition/types.hpp"

namespace litpipe::writer {

struct CitationKey {
  std::string author_token;  // as written, "et al." removed
  int year = 0;

  // Identity is (case-folded author token, year).
  std::string Normalized() const;
  bool operator<(const CitationKey& o) const { return Normalized() < o.Normalized(); }
  bool operator==(const CitationKey& o) const { return Normalized() == o.Normalized(); }
};

struct CitationOccurrence {
  CitationKey key;
  std::size_t offset = 0;  // byte offset of the opening bracket
  std::string context;     // the sentence containing the citation
};

// Family name of the first author ("Jane Q. Smith" -> "Smith", "Smith, J."
// -> "Smith"); papers without authors fall back to the first significant
// title word so they can still be cited and resolved.
std::string FamilyName(const acquisition::Paper& paper);

// "[Smith, 2024]" for a single author, "[Smith et al., 2024]" otherwise.
std::string RenderKey(const acquisition::Paper& paper);

// Every bracketed "[Name tokens, YYYY]" citation, including "et al." forms
// and ";"-separated multi-citations, in text order.
std::vector<CitationOccurrence> FindCitations(const std::string& text);

// Set semantics over FindCitations.
std::set<CitationKey> ExtractCitations(const std::string& text);

struct Resolution {
  // Distinct corpus ids cited at least once.
  std::set<std::string> cited_ids;
  // Each distinct key with the ids its occurrences resolved to.
  std::map<CitationKey, std::set<std::string>> resolved;
  std::set<CitationKey> unresolved;
  std::set<CitationKey> ambiguous;
  std::size_t occurrences = 0;
};

// Per occurrence: candidates share the year and the key's author token is a
// case-insensitive prefix of their family name. Several candidates are
// separated by title-word overlap with the citing sentence; a tie leaves the
// occurrence ambiguous.
Resolution ResolveCitations(const std::vector<CitationOccurrence>& occurrences,
                            const std::vector<acquisition::Paper>& corpus);

double Coverage(const Resolution& r, std::size_t corpus_size);

}  // namespace litpipe::writer

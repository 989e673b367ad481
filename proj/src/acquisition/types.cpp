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

#include "acquisition/types.hpp"

namespace litpipe::acquisition {

std::string_view SourceName(Source source) {
  return source == Source::kSemanticScholar ? "semantic-scholar" : "arxiv";
}

std::optional<Source> SourceFromName(std::string_view name) {
  if (name == "semantic-scholar") return Source::kSemanticScholar;
  if (name == "arxiv") return Source::kArxiv;
  return std::nullopt;
}

std::string_view RuleName(ExpansionRule rule) {
  switch (rule) {
    case ExpansionRule::kVerbatim: return "verbatim";
    case ExpansionRule::kSynonym: return "synonym";
    case ExpansionRule::kRelatedTerm: return "related-term";
    case ExpansionRule::kBooleanCompound: return "boolean-compound";
    case ExpansionRule::kAcronym: return "acronym";
  }
  return "verbatim";
}

}  // namespace litpipe::acquisition

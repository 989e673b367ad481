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

#include <string>
#include <string_view>

#include "acquisition/types.hpp"

namespace litpipe::infra {
class TextGenerator;
}

namespace litpipe::acquisition {

inline constexpr std::size_t kMinQueries = 20;
inline constexpr std::size_t kMaxQueries = 30;

// Trims and whitespace-collapses a topic. Throws Error(kInvalidInput) when
// nothing is left.
std::string NormalizeTopic(std::string_view raw);

// Rule-table expansion: the topic verbatim, acronym expansion/contraction,
// synonym substitution and surface variants, related technical terms, and
// AND/OR compounds, interleaved so every rule is represented, then padded
// with generic research-facet variants up to kMinQueries. Capped at
// kMaxQueries; duplicates are removed after case-folding.
//
// When `generator` is given, its line-per-query output joins the
// related-term candidates.
QuerySet ExpandQueries(std::string_view topic, infra::TextGenerator* generator = nullptr);

}  // namespace litpipe::acquisition

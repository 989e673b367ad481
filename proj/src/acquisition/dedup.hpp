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

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "acquisition/types.hpp"

namespace litpipe::acquisition {

// Byte-level Levenshtein distance.
std::size_t EditDistance(std::string_view a, std::string_view b);

// 1 - lev(a', b') / max(|a'|, |b'|) over titles normalized by
// text::NormalizeForMatch. Empty vs empty is 1; empty vs non-empty is 0.
double TitleSimilarity(std::string_view a, std::string_view b);

// Survivor order inside a duplicate group: more citations first, then
// semantic-scholar before arxiv, then smaller source_id.
bool SurvivorBefore(const Paper& a, const Paper& b);

// Greedy in survivor order: a paper is kept unless its title similarity to
// an already-kept paper reaches `threshold`. Kept papers are returned in
// input order. Idempotent, and no kept pair is at or above the threshold.
std::vector<Paper> Deduplicate(const std::vector<Paper>& papers, double threshold);

}  // namespace litpipe::acquisition

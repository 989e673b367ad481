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

#include "acquisition/dedup.hpp"

#include <algorithm>
#include <array>
#include <cstdlib>
#include <numeric>

#include "common/error.hpp"
#include "common/text.hpp"

namespace litpipe::acquisition {
namespace {

double SimilarityFromDistance(std::size_t distance, std::size_t longest) {
  if (longest == 0) return 1.0;
  return 1.0 - static_cast<double>(distance) / static_cast<double>(longest);
}

struct Candidate {
  std::string norm;
  std::array<int, 256> histogram{};
};

Candidate MakeCandidate(const std::string& title) {
  Candidate c;
  c.norm = text::NormalizeForMatch(title);
  for (unsigned char ch : c.norm) ++c.histogram[ch];
  return c;
}

// Exact "similarity >= threshold", with two sound lower bounds on the edit
// distance checked first: the length gap, and half the L1 gap between byte
// histograms (a substitution moves two counts, an indel one).
bool AtLeast(const Candidate& a, const Candidate& b, double threshold) {
  std::size_t longest = std::max(a.norm.size(), b.norm.size());
  auto below = [&](std::size_t distance_bound) {
    return SimilarityFromDistance(distance_bound, longest) < threshold;
  };
  std::size_t gap = longest - std::min(a.norm.size(), b.norm.size());
  if (below(gap)) return false;
  std::size_t l1 = 0;
  for (std::size_t i = 0; i < 256; ++i) {
    l1 += static_cast<std::size_t>(std::abs(a.histogram[i] - b.histogram[i]));
  }
  if (below((l1 + 1) / 2)) return false;
  return SimilarityFromDistance(EditDistance(a.norm, b.norm), longest) >= threshold;
}

}  // namespace

std::size_t EditDistance(std::string_view a, std::string_view b) {
  if (a.size() < b.size()) std::swap(a, b);
  std::vector<std::size_t> row(b.size() + 1);
  std::iota(row.begin(), row.end(), std::size_t{0});
  for (std::size_t i = 1; i <= a.size(); ++i) {
    std::size_t diag = row[0];
    row[0] = i;
    for (std::size_t j = 1; j <= b.size(); ++j) {
      std::size_t up = row[j];
      std::size_t cost = a[i - 1] == b[j - 1] ? 0 : 1;
      row[j] = std::min({row[j] + 1, row[j - 1] + 1, diag + cost});
      diag = up;
    }
  }
  return row[b.size()];
}

double TitleSimilarity(std::string_view a, std::string_view b) {
  auto na = text::NormalizeForMatch(a);
  auto nb = text::NormalizeForMatch(b);
  return SimilarityFromDistance(EditDistance(na, nb), std::max(na.size(), nb.size()));
}

bool SurvivorBefore(const Paper& a, const Paper& b) {
  if (a.citation_count != b.citation_count) return a.citation_count > b.citation_count;
  if (a.source != b.source) return static_cast<int>(a.source) < static_cast<int>(b.source);
  return a.source_id < b.source_id;
}

std::vector<Paper> Deduplicate(const std::vector<Paper>& papers, double threshold) {
  if (!(threshold >= 0.0 && threshold <= 1.0)) {
    Fail(ErrorCode::kInvalidInput, "similarity threshold must lie in [0, 1]");
  }
  std::vector<std::size_t> order(papers.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
    return SurvivorBefore(papers[x], papers[y]);
  });

  std::vector<Candidate> candidates;
  candidates.reserve(papers.size());
  for (const auto& p : papers) candidates.push_back(MakeCandidate(p.title));

  std::vector<std::size_t> kept;
  for (std::size_t idx : order) {
    bool duplicate = std::any_of(kept.begin(), kept.end(), [&](std::size_t k) {
      return AtLeast(candidates[idx], candidates[k], threshold);
    });
    if (!duplicate) kept.push_back(idx);
  }
  std::sort(kept.begin(), kept.end());
  std::vector<Paper> out;
  out.reserve(kept.size());
  for (std::size_t k : kept) out.push_back(papers[k]);
  return out;
}

}  // namespace litpipe::acquisition

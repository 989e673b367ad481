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

#include "clustering/tfidf.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>

#include "common/text.hpp"

namespace litpipe::clustering {
namespace {

bool Keep(const std::string& w) {
  if (w.size() < 2 || text::IsStopword(w)) return false;
  return !std::all_of(w.begin(), w.end(), [](unsigned char c) { return std::isdigit(c); });
}

}  // namespace

std::vector<std::string> DocumentTerms(const std::string& doc) {
  std::vector<std::string> out;
  const std::string* prev = nullptr;
  auto words = text::Words(doc);
  for (const auto& w : words) {
    if (!Keep(w)) {
      prev = nullptr;
      continue;
    }
    out.push_back(w);
    if (prev) out.push_back(*prev + " " + w);
    prev = &w;
  }
  return out;
}

TermTable CountTerms(const std::vector<std::vector<std::string>>& cluster_docs) {
  TermTable t;
  t.tf.resize(cluster_docs.size());
  for (std::size_t j = 0; j < cluster_docs.size(); ++j) {
    for (const auto& doc : cluster_docs[j]) {
      for (auto& term : DocumentTerms(doc)) ++t.tf[j][term];
    }
    for (const auto& [term, _] : t.tf[j]) ++t.cluster_freq[term];
  }
  return t;
}

std::vector<std::vector<TermScore>> TfidfTerms(
    const std::vector<std::vector<std::string>>& cluster_docs, int top_n) {
  const auto table = CountTerms(cluster_docs);
  const double k = static_cast<double>(cluster_docs.size());
  std::vector<std::vector<TermScore>> out(cluster_docs.size());
  for (std::size_t j = 0; j < cluster_docs.size(); ++j) {
    for (const auto& [term, tf] : table.tf[j]) {
      const int cf = table.cluster_freq.at(term);
      // ln(K/K) is exactly 0; keep it exact rather than trusting log(1.0).
      double idf = cf == static_cast<int>(k) ? 0.0 : std::log(k / cf);
      out[j].push_back({term, tf, static_cast<double>(tf) * idf});
    }
    std::sort(out[j].begin(), out[j].end(), [](const TermScore& a, const TermScore& b) {
      if (a.score != b.score) return a.score > b.score;
      if (a.tf != b.tf) return a.tf > b.tf;
      return a.term < b.term;
    });
    if (top_n > 0 && out[j].size() > static_cast<std::size_t>(top_n)) {
      out[j].resize(static_cast<std::size_t>(top_n));
    }
  }
  return out;
}

}  // namespace litpipe::clustering

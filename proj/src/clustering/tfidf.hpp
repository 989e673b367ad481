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
#include <string>
#include <vector>

namespace litpipe::clustering {

struct TermScore {
  std::string term;
  long tf = 0;
  double score = 0.0;

  bool operator==(const TermScore&) const = default;
};

// Terms of one document: lowercase alphanumeric words of length >= 2 that
// are neither stopwords nor pure digits, plus bigrams of adjacent kept
// words. A dropped word breaks adjacency.
std::vector<std::string> DocumentTerms(const std::string& doc);

// Per-cluster term counts and the number of clusters each term occurs in.
struct TermTable {
  std::vector<std::map<std::string, long>> tf;  // per cluster
  std::map<std::string, int> cluster_freq;
};

TermTable CountTerms(const std::vector<std::vector<std::string>>& cluster_docs);

// score(w, j) = tf(w, j) * ln(K / cf(w)). Returns every term of every
// cluster ranked by score desc, then tf desc, then term asc; top_n <= 0
// keeps all.
std::vector<std::vector<TermScore>> TfidfTerms(
    const std::vector<std::vector<std::string>>& cluster_docs, int top_n = 5);

}  // namespace litpipe::clustering

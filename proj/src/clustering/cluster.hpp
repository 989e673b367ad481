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

#include <cstdint>
#include <string>
#include <vector>

#include "acquisition/types.hpp"
#include "clustering/kmeans.hpp"
#include "clustering/metrics.hpp"
#include "clustering/select_k.hpp"
#include "clustering/tfidf.hpp"
#include "embedding/types.hpp"

namespace litpipe::infra {
class TextGenerator;
}

namespace litpipe::clustering {

inline constexpr int kMaxNameWords = 6;

// Without a generator, or when it fails or answers with nothing usable:
// the top two terms title-cased and joined by " and ".
std::string FallbackName(const std::vector<std::string>& terms);
std::string NameCluster(const std::vector<std::string>& terms,
                        const std::vector<std::string>& sample_titles,
                        infra::TextGenerator* generator, std::vector<std::string>* warnings);

struct ClusterProfile {
  int index = 0;
  std::string name;
  std::vector<std::string> key_terms;
  std::size_t size = 0;
  double avg_year = 0.0;
  double avg_citations = 0.0;
  double mean_confidence = 0.0;
  std::vector<std::string> member_ids;  // corpus order
};

struct ClusterRelationship {
  int a = 0;
  int b = 0;
  double strength = 0.0;
  RelationshipLabel label = RelationshipLabel::kDistinct;
};

struct ClusterOptions {
  int k_min = 5;
  int k_max = 15;
  std::uint64_t seed = 0;
  int top_terms = 5;
  KMeansOptions kmeans;
  bool parallel = true;
};

struct ClusteringResult {
  std::string topic;
  std::string model_id;
  std::vector<std::string> paper_ids;
  KSelectionResult selection;
  ClusterAssignment assignment;
  ClusterDiagnostics diagnostics;
  std::vector<double> confidences;
  std::vector<std::vector<TermScore>> terms;
  std::vector<ClusterProfile> profiles;
  // Every unordered pair, strongest first (ties by index pair).
  std::vector<ClusterRelationship> relationships;
  std::vector<std::string> warnings;
};

std::vector<ClusterRelationship> Relationships(const Matrix& centroids);

// select K -> diagnostics -> confidence -> TF-IDF -> names -> profiles ->
// relationships. Throws Error(kInternalConsistency) if the embedding rows
// are not aligned with the corpus.
ClusteringResult ClusterCorpus(const acquisition::Corpus& corpus,
                               const embedding::EmbeddingMatrix& embeddings,
                               const ClusterOptions& options,
                               infra::TextGenerator* namer = nullptr);

}  // namespace litpipe::clustering

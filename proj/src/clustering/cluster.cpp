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

#include "clustering/cluster.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include <fmt/format.h>

#include "common/error.hpp"
#include "common/text.hpp"
#include "infra/prompt.hpp"
#include "infra/text_generator.hpp"

namespace litpipe::clustering {

std::string FallbackName(const std::vector<std::string>& terms) {
  if (terms.empty()) return "Unlabeled Cluster";
  if (terms.size() == 1) return text::TitleCase(terms[0]);
  return text::TitleCase(terms[0]) + " and " + text::TitleCase(terms[1]);
}

std::string NameCluster(const std::vector<std::string>& terms,
                        const std::vector<std::string>& sample_titles,
                        infra::TextGenerator* generator, std::vector<std::string>* warnings) {
  if (!generator) return FallbackName(terms);
  std::string prompt = fmt::format("TASK: {}\n", infra::task::kNameCluster);
  prompt += "INSTRUCTIONS: Give this research cluster a descriptive title of at most " +
            std::to_string(kMaxNameWords) + " words. Reply with the title only.\n";
  prompt += "KEY_TERMS: " + text::Join(terms, ", ") + "\n";
  for (const auto& t : sample_titles) prompt += "SAMPLE_TITLE: " + t + "\n";
  try {
    auto resp = generator->Generate({prompt, 32, 0.0, std::nullopt});
    auto line = text::Trim(resp.text.substr(0, resp.text.find('\n')));
    std::erase_if(line, [](char c) { return c == '"' || c == '*' || c == '#'; });
    auto words = text::SplitWhitespace(line);
    if (words.empty()) {
      if (warnings) warnings->push_back("cluster namer returned nothing; using fallback name");
      return FallbackName(terms);
    }
    if (words.size() > static_cast<std::size_t>(kMaxNameWords)) words.resize(kMaxNameWords);
    return text::Join(words, " ");
  } catch (const Error& e) {
    if (warnings) {
      warnings->push_back(std::string("cluster naming failed, using fallback: ") + e.what());
    }
    return FallbackName(terms);
  }
}

std::vector<ClusterRelationship> Relationships(const Matrix& centroids) {
  std::vector<ClusterRelationship> out;
  for (std::size_t j = 0; j < centroids.rows(); ++j) {
    for (std::size_t k = j + 1; k < centroids.rows(); ++k) {
      double s = InterclusterStrength(centroids, j, k);
      out.push_back({static_cast<int>(j), static_cast<int>(k), s, LabelStrength(s)});
    }
  }
  std::stable_sort(out.begin(), out.end(), [](const auto& x, const auto& y) {
    return x.strength > y.strength;
  });
  return out;
}

ClusteringResult ClusterCorpus(const acquisition::Corpus& corpus,
                               const embedding::EmbeddingMatrix& embeddings,
                               const ClusterOptions& options, infra::TextGenerator* namer) {
  const auto& papers = corpus.papers;
  if (embeddings.vectors.size() != papers.size()) {
    Fail(ErrorCode::kInternalConsistency, "embedding matrix does not match the corpus size");
  }
  for (std::size_t i = 0; i < papers.size(); ++i) {
    if (i < embeddings.paper_ids.size() && embeddings.paper_ids[i] != papers[i].id) {
      Fail(ErrorCode::kInternalConsistency, "embedding row " + std::to_string(i) +
                                                " belongs to " + embeddings.paper_ids[i] +
                                                ", corpus has " + papers[i].id);
    }
  }

  ClusteringResult r;
  r.topic = corpus.topic;
  r.model_id = embeddings.model_id;
  for (const auto& p : papers) r.paper_ids.push_back(p.id);
  const Matrix x = FromEmbeddings(embeddings);

  if (options.k_min > options.k_max) Fail(ErrorCode::kInvalidInput, "k_min exceeds k_max");
  auto range = EffectiveKRange(options.k_min, options.k_max, x.rows());
  if (range.lo != std::max(2, options.k_min) || range.hi != options.k_max) {
    r.warnings.push_back(fmt::format("K range [{}, {}] clamped to [{}, {}] for {} papers",
                                     options.k_min, options.k_max, range.lo, range.hi,
                                     x.rows()));
  }
  r.selection = SelectK(x, options.k_min, options.k_max, options.seed, options.kmeans,
                        options.parallel);
  r.assignment = r.selection.best;
  const int k = r.assignment.k;
  r.diagnostics = Diagnose(x, r.assignment.labels);
  for (auto& w : r.diagnostics.warnings) r.warnings.push_back(w);
  for (std::size_t i = 0; i < x.rows(); ++i) {
    r.confidences.push_back(Confidence(x, r.assignment.labels, r.assignment.centroids, i));
  }

  std::vector<std::vector<std::string>> docs(static_cast<std::size_t>(k));
  std::vector<std::vector<std::size_t>> members(static_cast<std::size_t>(k));
  for (std::size_t i = 0; i < papers.size(); ++i) {
    auto j = static_cast<std::size_t>(r.assignment.labels[i]);
    docs[j].push_back(papers[i].title + "\n" + papers[i].abstract);
    members[j].push_back(i);
  }
  r.terms = TfidfTerms(docs, options.top_terms);

  std::map<std::string, int> name_uses;
  for (int j = 0; j < k; ++j) {
    const auto& m = members[static_cast<std::size_t>(j)];
    ClusterProfile p;
    p.index = j;
    for (const auto& t : r.terms[static_cast<std::size_t>(j)]) p.key_terms.push_back(t.term);
    p.size = m.size();
    double year = 0, cites = 0, conf = 0;
    for (auto i : m) {
      year += papers[i].year;
      cites += static_cast<double>(papers[i].citation_count);
      conf += r.confidences[i];
      p.member_ids.push_back(papers[i].id);
    }
    const double n = static_cast<double>(m.size());
    p.avg_year = year / n;
    p.avg_citations = cites / n;
    p.mean_confidence = conf / n;

    auto by_cites = m;
    std::stable_sort(by_cites.begin(), by_cites.end(), [&](std::size_t a, std::size_t b) {
      return papers[a].citation_count > papers[b].citation_count;
    });
    std::vector<std::string> samples;
    for (std::size_t s = 0; s < std::min<std::size_t>(5, by_cites.size()); ++s) {
      samples.push_back(papers[by_cites[s]].title);
    }
    p.name = NameCluster(p.key_terms, samples, namer, &r.warnings);
    if (int uses = ++name_uses[p.name]; uses > 1) p.name += fmt::format(" ({})", uses);
    r.profiles.push_back(std::move(p));
  }
  r.relationships = Relationships(r.assignment.centroids);
  return r;
}

}  // namespace litpipe::clustering

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

#include "evaluator/evaluate.hpp"

#include <future>
#include <sstream>

#include <fmt/format.h>

#include "common/error.hpp"
#include "common/sha256.hpp"
#include "common/text.hpp"
#include "evaluator/judge.hpp"
#include "infra/rate_manager.hpp"
#include "infra/text_generator.hpp"
#include "writer/citations.hpp"
#include "writer/provenance.hpp"
#include "writer/word_count.hpp"

namespace litpipe::evaluator {
namespace {

void ParseComparison(const std::string& reply, EvaluationReport& r) {
  std::istringstream in(reply);
  std::string line;
  while (std::getline(in, line)) {
    auto t = text::Trim(line);
    auto colon = t.find(':');
    if (colon == std::string::npos) continue;
    auto key = text::Trim(t.substr(0, colon));
    auto value = text::Trim(t.substr(colon + 1));
    if (key == "VS_ACM_COMPUTING_SURVEYS") r.vs_acm_computing_surveys = value;
    else if (key == "VS_CONFERENCE_SURVEYS") r.vs_conference_surveys = value;
    else if (key == "VS_WORKSHOP_PAPERS") r.vs_workshop_papers = value;
  }
  if (r.vs_acm_computing_surveys.empty() && r.vs_conference_surveys.empty() &&
      r.vs_workshop_papers.empty()) {
    // Unstructured reply: keep it whole rather than dropping it.
    r.vs_acm_computing_surveys = text::CollapseWhitespace(reply);
  }
}

}  // namespace

double CitationCoverage(const std::string& survey, const std::vector<acquisition::Paper>& corpus) {
  if (corpus.empty()) Fail(ErrorCode::kInvalidInput, "citation coverage of an empty corpus");
  auto res = writer::ResolveCitations(writer::FindCitations(survey), corpus);
  return writer::Coverage(res, corpus.size());
}

DeterministicMetrics ComputeMetrics(const std::string& survey, const acquisition::Corpus& corpus,
                                    const clustering::ClusteringResult& clusters,
                                    double coverage_min, double coverage_target) {
  if (corpus.papers.empty()) Fail(ErrorCode::kInvalidInput, "evaluation needs a non-empty corpus");
  DeterministicMetrics m;
  auto res = writer::ResolveCitations(writer::FindCitations(survey), corpus.papers);
  m.corpus_size = corpus.papers.size();
  m.cited_papers = res.cited_ids.size();
  m.citation_coverage = writer::Coverage(res, corpus.papers.size());
  m.unresolved_citations = res.unresolved.size() + res.ambiguous.size();
  m.word_count = writer::WordCount(survey);
  m.coverage_min_met = m.citation_coverage >= coverage_min;
  m.coverage_target_met = m.citation_coverage >= coverage_target;

  std::istringstream in(survey);
  std::string line;
  bool in_comment = false;
  while (std::getline(in, line)) {
    if (line.find("<!--") != std::string::npos && line.find("-->") == std::string::npos) {
      in_comment = true;
    }
    if (in_comment) {
      if (line.find("-->") != std::string::npos) in_comment = false;
      continue;
    }
    if (line.starts_with("#")) ++m.heading_count;
    if (line.starts_with("## ") && text::Trim(line.substr(3)) != "References") ++m.section_count;
  }
  for (std::size_t pos = 0; (pos = survey.find("<!-- section-failed", pos)) != std::string::npos;
       ++pos) {
    ++m.failed_sections;
  }

  std::size_t represented = 0;
  for (const auto& p : clusters.profiles) {
    ClusterCitation c{p.index, p.name, 0, p.size};
    for (const auto& id : p.member_ids) c.cited += res.cited_ids.count(id);
    represented += c.cited > 0;
    m.cluster_citations.push_back(std::move(c));
  }
  m.cluster_representation =
      clusters.profiles.empty()
          ? 0.0
          : static_cast<double>(represented) / static_cast<double>(clusters.profiles.size());
  return m;
}

EvaluationReport EvaluateSurvey(const std::string& survey, const acquisition::Corpus& corpus,
                                const clustering::ClusteringResult& clusters,
                                const EvaluatorOptions& options, infra::TextGenerator& judge,
                                infra::RateManager* rate, const std::string& timestamp) {
  EvaluationReport r;
  r.topic = corpus.topic;
  r.survey_sha256 = Sha256Hex(survey);
  r.judge_provider = judge.id();
  r.timestamp = timestamp;
  r.metrics = ComputeMetrics(survey, corpus, clusters, options.coverage_min, options.coverage_target);
  if (auto prov = writer::ParseProvenance(survey); prov && prov->topic != corpus.topic) {
    r.warnings.push_back("survey provenance topic '" + prov->topic + "' differs from corpus topic");
  }

  JudgeContext ctx{corpus.topic,
                   corpus.papers.size(),
                   clusters.profiles.size(),
                   r.metrics.citation_coverage,
                   r.metrics.word_count,
                   r.metrics.cluster_representation,
                   survey};

  const auto& rubric = Rubric();
  for (std::size_t i = 0; i < kDimensionCount; ++i) {
    auto& d = r.dimensions[i];
    d.name = rubric[i].name;
    d.category = rubric[i].category;
    d.weight = rubric[i].weight;
  }
  {
    auto& cov = r.dimensions[kCoverageDimension];
    cov.source = ScoreSource::kDeterministic;
    cov.score = CoverageScore(r.metrics.citation_coverage);
    cov.justification = fmt::format(
        "Computed, not judged: {} of {} corpus papers are cited ({:.2f}% coverage); {} of {} "
        "clusters have at least one citation.",
        r.metrics.cited_papers, r.metrics.corpus_size, 100.0 * r.metrics.citation_coverage,
        static_cast<std::size_t>(std::lround(r.metrics.cluster_representation *
                                             static_cast<double>(clusters.profiles.size()))),
        clusters.profiles.size());
    for (const auto& c : r.metrics.cluster_citations) {
      cov.evidence.push_back(fmt::format("{}: {} of {} papers cited", c.name, c.cited, c.size));
    }
  }

  std::vector<JudgeOutcome> outcomes(kDimensionCount);
  const std::size_t width = std::max<std::size_t>(1, options.max_concurrency);
  std::vector<std::size_t> judged;
  for (std::size_t i = 0; i < kDimensionCount; ++i) {
    if (i != kCoverageDimension) judged.push_back(i);
  }
  for (std::size_t begin = 0; begin < judged.size(); begin += width) {
    std::vector<std::future<JudgeOutcome>> inflight;
    std::size_t end = std::min(judged.size(), begin + width);
    for (std::size_t t = begin; t < end; ++t) {
      inflight.push_back(std::async(width == 1 ? std::launch::deferred : std::launch::async,
                                    [&, i = judged[t]] {
                                      return JudgeDimension(rubric[i], ctx, judge, rate,
                                                            options.seed);
                                    }));
    }
    for (std::size_t t = begin; t < end; ++t) outcomes[judged[t]] = inflight[t - begin].get();
  }
  std::array<std::optional<double>, kDimensionCount> scores;
  scores[kCoverageDimension] = r.dimensions[kCoverageDimension].score;
  for (auto i : judged) {
    auto& d = r.dimensions[i];
    auto& o = outcomes[i];
    for (auto& w : o.warnings) r.warnings.push_back(std::move(w));
    if (!o.reply) {
      r.missing_dimensions.push_back(d.name);
      continue;
    }
    d.score = o.reply->score;
    d.justification = o.reply->justification;
    d.evidence = o.reply->evidence;
    scores[i] = d.score;
  }

  try {
    r.scores = Aggregate(scores);
    r.quality_level = QualityLevel(r.scores->overall);
    r.publication_readiness = PublicationReadiness(r.scores->overall, r.metrics);
  } catch (const Error& e) {
    r.warnings.push_back(std::string("evaluation incomplete: ") + e.what());
    r.quality_level = "incomplete";
    r.publication_readiness = "Not assessed: the evaluation is incomplete.";
  }

  try {
    infra::GenerationRequest req{BuildComparePrompt(ctx), 1024, 0.0, options.seed};
    auto call = [&] { return judge.Generate(req); };
    ParseComparison((rate ? rate->Call("judge", call) : call()).text, r);
  } catch (const Error& e) {
    r.warnings.push_back(std::string("comparison to standards unavailable: ") + e.what());
  }
  WriteNarrative(r, options.coverage_min, options.coverage_target);
  return r;
}

}  // namespace litpipe::evaluator

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

#include "evaluator/report.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <fmt/format.h>

#include "common/error.hpp"
#include "common/text.hpp"

namespace litpipe::evaluator {
namespace {

using J = nlohmann::ordered_json;

const char* SourceName(ScoreSource s) {
  return s == ScoreSource::kDeterministic ? "deterministic" : "judged";
}

double Round4(double v) { return std::round(v * 1e4) / 1e4; }

std::string Recommend(std::string_view dim) {
  if (dim == "Citation Coverage") {
    return "Integrate the uncited corpus papers, starting with the most cited ones, into the "
           "cluster sections.";
  }
  if (dim == "Accuracy") return "Check every attribution against the paper list and qualify claims the cited work does not support.";
  if (dim == "Synthesis Quality") return "Rewrite paper-by-paper passages as comparisons organized around shared questions.";
  if (dim == "Organization") return "Tighten the section hierarchy and add transitions that state how each theme leads to the next.";
  if (dim == "Readability") return "Shorten long sentences and define technical terms at first use.";
  if (dim == "Academic Rigor") return "Make the corpus construction and clustering method explicit and state the survey's limitations.";
  if (dim == "Clarity") return "Replace vague descriptions with concrete mechanisms and examples.";
  if (dim == "Coherence") return "Unify terminology across sections and verify internal cross-references.";
  if (dim == "Comprehensiveness") return "Extend discussion to underrepresented clusters and publication years.";
  if (dim == "Critical Analysis") return "Discuss limitations and conflicting results of the main approaches explicitly.";
  if (dim == "Novelty & Insights") return "Propose a taxonomy or cross-cluster framework that the individual papers do not offer.";
  return "Tie each proposed direction to a specific gap observed in the corpus.";
}

std::string Priority(const DimensionScore& d) {
  const double s = d.score.value_or(0.0);
  if (s < 6.0 || (d.category == Category::kCore && s < 7.5)) return "HIGH";
  if (s < 7.5) return "MEDIUM";
  return "LOW";
}

J MetricsJson(const DeterministicMetrics& m) {
  J per = J::array();
  for (const auto& c : m.cluster_citations) {
    per.push_back({{"cluster", c.index}, {"name", c.name}, {"cited", c.cited}, {"size", c.size}});
  }
  return {{"citation_coverage", Round4(m.citation_coverage)},
          {"cited_papers", m.cited_papers},
          {"corpus_size", m.corpus_size},
          {"word_count", m.word_count},
          {"section_count", m.section_count},
          {"heading_count", m.heading_count},
          {"cluster_representation", Round4(m.cluster_representation)},
          {"citations_per_cluster", per},
          {"unresolved_citations", m.unresolved_citations},
          {"failed_sections", m.failed_sections},
          {"coverage_min_met", m.coverage_min_met},
          {"coverage_target_met", m.coverage_target_met}};
}

}  // namespace

double Round2(double v) { return std::round(v * 100.0) / 100.0; }

std::string QualityLevel(double overall) {
  if (overall >= 9.0) return "A (excellent)";
  if (overall >= 8.0) return "A- (strong)";
  if (overall >= 7.0) return "B (good)";
  if (overall >= 6.0) return "C (adequate)";
  if (overall >= 4.0) return "D (weak)";
  return "F (inadequate)";
}

std::string PublicationReadiness(double overall, const DeterministicMetrics& m) {
  std::string s;
  if (overall >= 8.5) s = "Close to submission quality; minor revisions.";
  else if (overall >= 7.0) s = "Needs a revision pass before submission.";
  else if (overall >= 5.0) s = "Needs substantial revision.";
  else s = "Not ready; major rework required.";
  if (!m.coverage_min_met) s += " Citation coverage is below the minimum.";
  if (m.failed_sections > 0) s += fmt::format(" {} section(s) failed to generate.", m.failed_sections);
  return s;
}

void WriteNarrative(EvaluationReport& r, double coverage_min, double coverage_target) {
  const auto& m = r.metrics;
  r.strengths.clear();
  r.weaknesses.clear();
  r.recommendations.clear();

  std::vector<std::size_t> order(kDimensionCount);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return r.dimensions[a].score.value_or(-1.0) > r.dimensions[b].score.value_or(-1.0);
  });
  for (auto i : order) {
    const auto& d = r.dimensions[i];
    if (!d.score) continue;
    auto line = fmt::format("{} ({:.2f}/10): {}", d.name, *d.score, d.justification);
    if (!d.evidence.empty()) line += " Evidence: \"" + d.evidence.front() + "\"";
    if (*d.score >= 7.5) r.strengths.push_back(line);
    else if (*d.score < 7.0) r.weaknesses.push_back(line);
  }
  if (m.coverage_target_met) {
    r.strengths.push_back(fmt::format("Citation coverage {:.1f}% meets the {:.0f}% target.",
                                      100.0 * m.citation_coverage, 100.0 * coverage_target));
  } else if (m.coverage_min_met) {
    r.weaknesses.push_back(fmt::format(
        "Citation coverage {:.1f}% meets the {:.0f}% minimum but not the {:.0f}% target.",
        100.0 * m.citation_coverage, 100.0 * coverage_min, 100.0 * coverage_target));
  } else {
    r.weaknesses.push_back(fmt::format("Citation coverage {:.1f}% is below the {:.0f}% minimum.",
                                       100.0 * m.citation_coverage, 100.0 * coverage_min));
  }
  if (m.cluster_representation >= 1.0) {
    r.strengths.push_back(fmt::format("All {} clusters are cited.", m.cluster_citations.size()));
  } else {
    std::vector<std::string> absent;
    for (const auto& c : m.cluster_citations) {
      if (c.cited == 0) absent.push_back(c.name);
    }
    r.weaknesses.push_back("Clusters without any citation: " + text::Join(absent, "; ") + ".");
  }
  if (m.unresolved_citations > 0) {
    r.weaknesses.push_back(fmt::format("{} citation key(s) do not resolve to a corpus paper.",
                                       m.unresolved_citations));
  }
  if (m.failed_sections > 0) {
    r.weaknesses.push_back(fmt::format("{} section(s) are placeholders after generation failures.",
                                       m.failed_sections));
  }
  r.strengths.push_back(fmt::format("{} words across {} sections.", m.word_count, m.section_count));

  if (!m.coverage_min_met) {
    r.recommendations.push_back({"HIGH", Recommend("Citation Coverage"),
                                 "Raises Citation Coverage and Comprehensiveness.", "MEDIUM"});
  }
  std::vector<std::size_t> weakest = order;
  std::reverse(weakest.begin(), weakest.end());
  std::size_t added = 0;
  for (auto i : weakest) {
    const auto& d = r.dimensions[i];
    if (added == 3) break;
    if (!m.coverage_min_met && i == kCoverageDimension) continue;
    r.recommendations.push_back(
        {Priority(d), Recommend(d.name),
         d.score ? fmt::format("Improves {} from {:.2f}.", d.name, *d.score)
                 : fmt::format("Allows {} to be scored.", d.name),
         d.category == Category::kCore ? "HIGH" : "MEDIUM"});
    ++added;
  }
  std::stable_sort(r.recommendations.begin(), r.recommendations.end(),
                   [](const Recommendation& a, const Recommendation& b) {
                     auto rank = [](const std::string& p) {
                       return p == "HIGH" ? 0 : p == "MEDIUM" ? 1 : 2;
                     };
                     return rank(a.priority) < rank(b.priority);
                   });

  std::string s;
  if (r.scores) {
    s = fmt::format(
        "This survey on {} scores {:.2f}/10 overall ({}), with core quality {:.2f}, writing "
        "quality {:.2f} and content depth {:.2f}. ",
        r.topic, Round2(r.scores->overall), QualityLevel(r.scores->overall), r.scores->core,
        r.scores->writing, r.scores->depth);
  } else {
    s = fmt::format("The evaluation of this survey on {} is incomplete: {} could not be scored. ",
                    r.topic, text::Join(r.missing_dimensions, ", "));
  }
  s += fmt::format("It cites {} of {} corpus papers ({:.1f}% coverage) in {} words. ",
                   m.cited_papers, m.corpus_size, 100.0 * m.citation_coverage, m.word_count);
  const DimensionScore* best = nullptr;
  const DimensionScore* worst = nullptr;
  for (const auto& d : r.dimensions) {
    if (!d.score) continue;
    if (!best || *d.score > *best->score) best = &d;
    if (!worst || *d.score < *worst->score) worst = &d;
  }
  if (best && worst) {
    s += fmt::format("Its strongest dimension is {} ({:.2f}) and its weakest is {} ({:.2f}). ",
                     best->name, *best->score, worst->name, *worst->score);
  }
  if (!r.recommendations.empty()) {
    s += "Highest-priority revision: " + r.recommendations.front().recommendation;
  }
  auto words = text::SplitWhitespace(s);
  if (words.size() > 200) {
    words.resize(200);
    s = text::Join(words, " ");
  }
  r.executive_summary = text::Trim(s);
}

nlohmann::ordered_json ReportToJson(const EvaluationReport& r) {
  J j;
  j["schema"] = kEvaluationSchema;
  j["topic"] = r.topic;
  J dims = J::object();
  for (const auto& d : r.dimensions) {
    J e;
    e["score"] = d.score ? J(Round2(*d.score)) : J(nullptr);
    e["weight"] = std::lround(d.weight * 100.0);
    e["category"] = CategoryName(d.category);
    e["source"] = SourceName(d.source);
    e["justification"] = d.justification;
    e["specific_examples"] = d.evidence;
    dims[d.name] = e;
  }
  j["dimensional_scores"] = dims;
  J overall;
  if (r.scores) {
    overall["weighted_total_score"] = Round2(r.scores->overall);
    overall["score_breakdown"] = {{"core", Round2(r.scores->core)},
                                  {"writing", Round2(r.scores->writing)},
                                  {"depth", Round2(r.scores->depth)}};
  } else {
    overall["weighted_total_score"] = nullptr;
    overall["score_breakdown"] = nullptr;
  }
  overall["quality_level"] = r.quality_level;
  overall["publication_readiness"] = r.publication_readiness;
  j["overall_assessment"] = overall;
  j["comparison_to_standards"] = {{"vs_acm_computing_surveys", r.vs_acm_computing_surveys},
                                  {"vs_conference_surveys", r.vs_conference_surveys},
                                  {"vs_workshop_papers", r.vs_workshop_papers}};
  j["strengths"] = r.strengths;
  j["weaknesses"] = r.weaknesses;
  J recs = J::array();
  for (const auto& rec : r.recommendations) {
    recs.push_back({{"priority", rec.priority},
                    {"recommendation", rec.recommendation},
                    {"impact", rec.impact},
                    {"effort", rec.effort}});
  }
  j["prioritized_recommendations"] = recs;
  j["executive_summary"] = r.executive_summary;
  j["deterministic_metrics"] = MetricsJson(r.metrics);
  j["provenance"] = {{"survey_sha256", r.survey_sha256},
                     {"judge_provider", r.judge_provider},
                     {"timestamp", r.timestamp}};
  j["complete"] = r.complete();
  j["missing_dimensions"] = r.missing_dimensions;
  j["warnings"] = r.warnings;
  return j;
}

EvaluationReport ReportFromJson(const nlohmann::json& j) {
  try {
    if (j.at("schema").get<int>() != kEvaluationSchema) {
      Fail(ErrorCode::kParse, "unsupported evaluation schema");
    }
    EvaluationReport r;
    r.topic = j.at("topic").get<std::string>();
    const auto& dims = j.at("dimensional_scores");
    for (std::size_t i = 0; i < kDimensionCount; ++i) {
      const auto& spec = Rubric()[i];
      const auto& e = dims.at(std::string(spec.name));
      auto& d = r.dimensions[i];
      d.name = spec.name;
      d.category = spec.category;
      d.weight = spec.weight;
      if (!e.at("score").is_null()) d.score = e.at("score").get<double>();
      d.source = e.at("source").get<std::string>() == "deterministic" ? ScoreSource::kDeterministic
                                                                      : ScoreSource::kJudged;
      d.justification = e.at("justification").get<std::string>();
      d.evidence = e.at("specific_examples").get<std::vector<std::string>>();
    }
    const auto& o = j.at("overall_assessment");
    if (!o.at("weighted_total_score").is_null()) {
      const auto& b = o.at("score_breakdown");
      r.scores = CategoryScores{b.at("core").get<double>(), b.at("writing").get<double>(),
                                b.at("depth").get<double>(),
                                o.at("weighted_total_score").get<double>()};
    }
    r.quality_level = o.at("quality_level").get<std::string>();
    r.publication_readiness = o.at("publication_readiness").get<std::string>();
    const auto& c = j.at("comparison_to_standards");
    r.vs_acm_computing_surveys = c.at("vs_acm_computing_surveys").get<std::string>();
    r.vs_conference_surveys = c.at("vs_conference_surveys").get<std::string>();
    r.vs_workshop_papers = c.at("vs_workshop_papers").get<std::string>();
    r.strengths = j.at("strengths").get<std::vector<std::string>>();
    r.weaknesses = j.at("weaknesses").get<std::vector<std::string>>();
    for (const auto& rec : j.at("prioritized_recommendations")) {
      r.recommendations.push_back({rec.at("priority").get<std::string>(),
                                   rec.at("recommendation").get<std::string>(),
                                   rec.at("impact").get<std::string>(),
                                   rec.at("effort").get<std::string>()});
    }
    r.executive_summary = j.at("executive_summary").get<std::string>();
    const auto& m = j.at("deterministic_metrics");
    auto& dm = r.metrics;
    dm.citation_coverage = m.at("citation_coverage").get<double>();
    dm.cited_papers = m.at("cited_papers").get<std::size_t>();
    dm.corpus_size = m.at("corpus_size").get<std::size_t>();
    dm.word_count = m.at("word_count").get<std::size_t>();
    dm.section_count = m.at("section_count").get<std::size_t>();
    dm.heading_count = m.at("heading_count").get<std::size_t>();
    dm.cluster_representation = m.at("cluster_representation").get<double>();
    for (const auto& pc : m.at("citations_per_cluster")) {
      dm.cluster_citations.push_back({pc.at("cluster").get<int>(), pc.at("name").get<std::string>(),
                                      pc.at("cited").get<std::size_t>(),
                                      pc.at("size").get<std::size_t>()});
    }
    dm.unresolved_citations = m.at("unresolved_citations").get<std::size_t>();
    dm.failed_sections = m.at("failed_sections").get<std::size_t>();
    dm.coverage_min_met = m.at("coverage_min_met").get<bool>();
    dm.coverage_target_met = m.at("coverage_target_met").get<bool>();
    const auto& p = j.at("provenance");
    r.survey_sha256 = p.at("survey_sha256").get<std::string>();
    r.judge_provider = p.at("judge_provider").get<std::string>();
    r.timestamp = p.at("timestamp").get<std::string>();
    r.missing_dimensions = j.at("missing_dimensions").get<std::vector<std::string>>();
    r.warnings = j.at("warnings").get<std::vector<std::string>>();
    return r;
  } catch (const nlohmann::json::exception& e) {
    Fail(ErrorCode::kParse, std::string("malformed evaluation report: ") + e.what());
  }
}

std::string RenderDigest(const EvaluationReport& r) {
  std::string md = "# Evaluation Digest: " + r.topic + "\n\n";
  if (r.scores) {
    md += fmt::format("**Overall: {:.2f} / 10** ({})\n\n", Round2(r.scores->overall), r.quality_level);
    md += fmt::format("- Core Quality (60%): {:.2f}\n- Writing Quality (20%): {:.2f}\n"
                      "- Content Depth (20%): {:.2f}\n\n",
                      Round2(r.scores->core), Round2(r.scores->writing), Round2(r.scores->depth));
  } else {
    md += "**Overall: incomplete** (missing: " + text::Join(r.missing_dimensions, ", ") + ")\n\n";
  }
  md += "| # | Dimension | Category | Weight | Score | Source |\n";
  md += "|---|-----------|----------|--------|-------|--------|\n";
  for (std::size_t i = 0; i < kDimensionCount; ++i) {
    const auto& d = r.dimensions[i];
    md += fmt::format("| {} | {} | {} | {}% | {} | {} |\n", i + 1, d.name, CategoryTitle(d.category),
                      std::lround(d.weight * 100.0),
                      d.score ? fmt::format("{:.2f}", Round2(*d.score)) : std::string("missing"),
                      SourceName(d.source));
  }
  const auto& m = r.metrics;
  md += "\n## Deterministic Metrics\n\n";
  md += fmt::format("- Citation coverage: {:.2f}% ({} of {} papers)\n", 100.0 * m.citation_coverage,
                    m.cited_papers, m.corpus_size);
  md += fmt::format("- Coverage minimum met: {}; target met: {}\n", m.coverage_min_met ? "yes" : "no",
                    m.coverage_target_met ? "yes" : "no");
  md += fmt::format("- Word count: {}\n- Sections: {}\n", m.word_count, m.section_count);
  md += fmt::format("- Cluster representation: {:.1f}%\n", 100.0 * m.cluster_representation);
  md += fmt::format("- Unresolved citation keys: {}\n", m.unresolved_citations);
  auto list = [&md](const char* title, const std::vector<std::string>& items) {
    md += fmt::format("\n## {}\n\n", title);
    if (items.empty()) md += "- none\n";
    for (const auto& s : items) md += "- " + s + "\n";
  };
  list("Strengths", r.strengths);
  list("Weaknesses", r.weaknesses);
  md += "\n## Prioritized Recommendations\n\n";
  for (std::size_t i = 0; i < r.recommendations.size(); ++i) {
    const auto& rec = r.recommendations[i];
    md += fmt::format("{}. **{}** {} (impact: {}; effort: {})\n", i + 1, rec.priority,
                      rec.recommendation, rec.impact, rec.effort);
  }
  md += "\n## Executive Summary\n\n" + r.executive_summary + "\n";
  if (!r.warnings.empty()) list("Warnings", r.warnings);
  return md;
}

}  // namespace litpipe::evaluator

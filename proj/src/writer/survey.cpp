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

#include "writer/survey.hpp"

#include <algorithm>
#include <future>
#include <map>

#include <fmt/format.h>

#include "common/error.hpp"
#include "common/text.hpp"
#include "infra/prompt.hpp"
#include "infra/rate_manager.hpp"
#include "infra/text_generator.hpp"
#include "writer/word_count.hpp"

namespace litpipe::writer {
namespace {

using acquisition::Paper;

// Prompt fields are single-line and " | "-separated.
std::string OneLine(const std::string& s) {
  std::string out = text::CollapseWhitespace(s);
  std::replace(out.begin(), out.end(), '|', '/');
  return out;
}

std::string Excerpt(const std::string& s, std::size_t limit) {
  auto one = OneLine(s);
  if (one.size() <= limit) return one;
  auto cut = one.rfind(' ', limit);
  return one.substr(0, cut == std::string::npos ? limit : cut) + " ...";
}

bool MoreInfluential(const Paper* a, const Paper* b) {
  return a->citation_count > b->citation_count;
}

std::vector<const Paper*> Members(const SurveyInputs& in, int cluster) {
  std::vector<const Paper*> out;
  const auto& labels = in.clusters->assignment.labels;
  for (std::size_t i = 0; i < in.corpus->papers.size(); ++i) {
    if (labels[i] == cluster) out.push_back(&in.corpus->papers[i]);
  }
  std::stable_sort(out.begin(), out.end(), MoreInfluential);
  return out;
}

std::string RelationshipLine(const SurveyInputs& in, int cluster, std::size_t limit) {
  const auto& c = *in.clusters;
  std::vector<std::string> parts;
  for (const auto& rel : c.relationships) {
    if (cluster >= 0 && rel.a != cluster && rel.b != cluster) continue;
    std::string name;
    if (cluster >= 0) {
      name = c.profiles[static_cast<std::size_t>(rel.a == cluster ? rel.b : rel.a)].name;
    } else {
      name = c.profiles[static_cast<std::size_t>(rel.a)].name + " / " +
             c.profiles[static_cast<std::size_t>(rel.b)].name;
    }
    parts.push_back(fmt::format("{} ({}, {:.3f})", OneLine(name),
                                clustering::RelationshipLabelName(rel.label), rel.strength));
    if (parts.size() == limit) break;
  }
  return text::Join(parts, "; ");
}

std::string Instructions(SectionKind kind) {
  switch (kind) {
    case SectionKind::kAbstract:
      return "Write the survey abstract: scope, the main research themes found, and the "
             "principal open problems. No headings.";
    case SectionKind::kIntroduction:
      return "Introduce the field, motivate the survey, and preview how the themes relate. "
             "Cite the listed papers where they support a claim.";
    case SectionKind::kClusterSection:
      return "Synthesize this research theme instead of summarizing papers one by one: compare "
             "approaches, name trade-offs, and point out gaps. Cite every listed paper at least "
             "once using exactly its CITE key. Use ### subsections.";
    case SectionKind::kCrossCutting:
      return "Discuss themes and methods that span several clusters, using the relationship "
             "strengths as a guide. Cite the listed papers.";
    case SectionKind::kFutureDirections:
      return "Identify concrete, evidence-backed research directions. Cite the listed papers.";
    case SectionKind::kConclusion:
      return "Conclude the survey briefly. Do not introduce new material.";
  }
  return "";
}

std::string GenerateText(infra::TextGenerator& generator, infra::RateManager* rate,
                         const std::string& prompt, std::size_t budget, std::uint64_t seed) {
  infra::GenerationRequest req{prompt, static_cast<int>(std::max<std::size_t>(512, budget * 2)),
                               0.4, seed};
  auto call = [&] { return generator.Generate(req); };
  auto resp = rate ? rate->Call("generation", call) : call();
  return text::Trim(resp.text);
}

std::string CleanReason(std::string s) {
  std::replace(s.begin(), s.end(), '\n', ' ');
  for (std::size_t p; (p = s.find("--")) != std::string::npos;) s.replace(p, 2, "-");
  return s;
}

std::string ReferenceEntry(const Paper& p) {
  std::vector<std::string> authors(p.authors.begin(),
                                   p.authors.begin() +
                                       static_cast<std::ptrdiff_t>(std::min<std::size_t>(3, p.authors.size())));
  std::string who = authors.empty() ? "Anonymous" : text::Join(authors, ", ");
  if (p.authors.size() > 3) who += ", et al.";
  std::string entry = fmt::format("- {} ({}). {}.", who, p.year, p.title);
  if (p.venue && !p.venue->empty()) entry += " " + *p.venue + ".";
  if (p.url) entry += " " + *p.url;
  return entry;
}

}  // namespace

std::string SurveyTitle(const std::string& topic) { return text::TitleCase(topic) + ": A Survey"; }

std::vector<const Paper*> SectionPapers(const Section& section, const SurveyInputs& in) {
  const auto& papers = in.corpus->papers;
  std::vector<const Paper*> all;
  for (const auto& p : papers) all.push_back(&p);
  std::stable_sort(all.begin(), all.end(), MoreInfluential);
  switch (section.kind) {
    case SectionKind::kClusterSection:
      return Members(in, *section.cluster_index);
    case SectionKind::kIntroduction:
      all.resize(std::min<std::size_t>(8, all.size()));
      return all;
    case SectionKind::kCrossCutting: {
      std::vector<const Paper*> out;
      for (std::size_t c = 0; c < in.clusters->profiles.size(); ++c) {
        auto m = Members(in, static_cast<int>(c));
        for (std::size_t i = 0; i < std::min<std::size_t>(2, m.size()); ++i) out.push_back(m[i]);
      }
      return out;
    }
    case SectionKind::kFutureDirections: {
      std::stable_sort(all.begin(), all.end(),
                       [](const Paper* a, const Paper* b) { return a->year > b->year; });
      all.resize(std::min<std::size_t>(6, all.size()));
      return all;
    }
    case SectionKind::kAbstract:
    case SectionKind::kConclusion:
      return {};
  }
  return {};
}

std::string BuildDraftPrompt(const Section& section, const SurveyInputs& in,
                             const std::vector<const Paper*>& papers, std::size_t excerpt_chars) {
  const auto& c = *in.clusters;
  std::string p = fmt::format("TASK: {}\n", infra::task::kDraftSection);
  p += "TOPIC: " + OneLine(in.corpus->topic) + "\n";
  p += "SECTION: " + OneLine(section.title) + "\n";
  p += fmt::format("SECTION_KIND: {}\n", SectionKindName(section.kind));
  p += fmt::format("WORD_BUDGET: {}\n", section.word_budget);
  p += fmt::format("CORPUS_SIZE: {}\n", in.corpus->papers.size());
  p += fmt::format("CLUSTER_COUNT: {}\n", c.profiles.size());
  if (section.cluster_index) {
    const auto& prof = c.profiles[static_cast<std::size_t>(*section.cluster_index)];
    p += "KEY_TERMS: " + text::Join(prof.key_terms, ", ") + "\n";
    p += "RELATIONSHIPS: " + RelationshipLine(in, *section.cluster_index, 3) + "\n";
  } else {
    std::vector<std::string> names;
    for (const auto& prof : c.profiles) names.push_back(OneLine(prof.name));
    p += "THEMES: " + text::Join(names, "; ") + "\n";
    std::vector<std::string> terms;
    for (const auto& prof : c.profiles) {
      if (!prof.key_terms.empty()) terms.push_back(prof.key_terms.front());
    }
    p += "KEY_TERMS: " + text::Join(terms, ", ") + "\n";
    if (section.kind == SectionKind::kCrossCutting) {
      p += "RELATIONSHIPS: " + RelationshipLine(in, -1, 5) + "\n";
    }
  }
  p += "CITATION_STYLE: [Author, Year] or [Author et al., Year], exactly as given in CITE\n";
  p += "INSTRUCTIONS: " + Instructions(section.kind) + fmt::format(
      " Aim for about {} words of Markdown prose.\n", section.word_budget);
  if (!papers.empty()) {
    p += "PAPERS:\n";
    for (const auto* paper : papers) {
      std::vector<std::string> authors(
          paper->authors.begin(),
          paper->authors.begin() + static_cast<std::ptrdiff_t>(std::min<std::size_t>(3, paper->authors.size())));
      p += fmt::format("- CITE: {} | TITLE: {} | YEAR: {} | AUTHORS: {}{} | CITATIONS: {}\n",
                       RenderKey(*paper), OneLine(paper->title), paper->year,
                       OneLine(text::Join(authors, ", ")), paper->authors.size() > 3 ? ", et al." : "",
                       paper->citation_count);
      if (excerpt_chars > 0 && !paper->abstract.empty()) {
        p += "  ABSTRACT: " + Excerpt(paper->abstract, excerpt_chars) + "\n";
      }
    }
  }
  return p;
}

std::string BuildAugmentPrompt(const Section& section, const SurveyInputs& in,
                               const std::vector<const Paper*>& uncited) {
  std::string p = fmt::format("TASK: {}\n", infra::task::kAugmentCoverage);
  p += "TOPIC: " + OneLine(in.corpus->topic) + "\n";
  p += "SECTION: " + OneLine(section.title) + "\n";
  if (section.cluster_index) {
    const auto& prof = in.clusters->profiles[static_cast<std::size_t>(*section.cluster_index)];
    p += "KEY_TERMS: " + text::Join(prof.key_terms, ", ") + "\n";
  }
  p += "INSTRUCTIONS: Write one or two additional paragraphs for this section that integrate "
       "each of the following papers, citing each with exactly its CITE key.\n";
  p += "PAPERS:\n";
  for (const auto* paper : uncited) {
    p += fmt::format("- CITE: {} | TITLE: {} | YEAR: {}\n", RenderKey(*paper),
                     OneLine(paper->title), paper->year);
  }
  return p;
}

std::string FailedSectionStub(const std::string& reason, const std::vector<const Paper*>& papers) {
  std::string s = "<!-- section-failed: " + CleanReason(reason) + " -->\n\n";
  s += "This section could not be generated.";
  if (!papers.empty()) {
    s += " Principal papers for this theme:\n";
    for (std::size_t i = 0; i < std::min<std::size_t>(10, papers.size()); ++i) {
      s += fmt::format("\n- {} ({})", OneLine(papers[i]->title), papers[i]->year);
    }
  }
  return s;
}

SectionDraft DraftSection(const Section& section, const SurveyInputs& in,
                          const WriterOptions& options, infra::TextGenerator& generator,
                          infra::RateManager* rate) {
  SectionDraft d{section, "", false, "", 0};
  auto papers = SectionPapers(section, in);
  try {
    d.text = GenerateText(generator, rate, BuildDraftPrompt(section, in, papers, options.excerpt_chars),
                          section.word_budget, options.seed);
    if (d.text.empty()) Fail(ErrorCode::kProtocol, "provider returned an empty section");
  } catch (const Error& e) {
    d.failed = true;
    d.failure = e.what();
    d.text = FailedSectionStub(e.what(), papers);
  }
  return d;
}

std::vector<double> EnforceCoverage(std::vector<SectionDraft>& drafts, const SurveyInputs& in,
                                    const WriterOptions& options, infra::TextGenerator& generator,
                                    infra::RateManager* rate, std::size_t* requests,
                                    std::vector<std::string>* warnings) {
  if (options.coverage_min > options.coverage_target) {
    Fail(ErrorCode::kInvalidInput, "coverage_min exceeds coverage_target");
  }
  const auto& papers = in.corpus->papers;
  auto measure = [&] {
    std::string body;
    for (const auto& d : drafts) body += d.text + "\n\n";
    return ResolveCitations(FindCitations(body), papers);
  };
  std::vector<double> history;
  auto res = measure();
  history.push_back(Coverage(res, papers.size()));
  for (int pass = 0; pass < options.max_passes && history.back() < options.coverage_min; ++pass) {
    for (auto& d : drafts) {
      if (d.section.kind != SectionKind::kClusterSection) continue;
      std::vector<const Paper*> uncited;
      for (const auto* p : Members(in, *d.section.cluster_index)) {
        if (!res.cited_ids.count(p->id)) uncited.push_back(p);
      }
      if (uncited.empty()) continue;
      if (uncited.size() > options.max_augment_papers) uncited.resize(options.max_augment_papers);
      if (requests) ++*requests;
      try {
        auto extra = GenerateText(generator, rate, BuildAugmentPrompt(d.section, in, uncited),
                                  40 * uncited.size(), options.seed + 1 + static_cast<std::uint64_t>(pass));
        if (!extra.empty()) {
          d.text += "\n\n" + extra;
          ++d.augmentations;
        }
      } catch (const Error& e) {
        if (warnings) {
          warnings->push_back("coverage augmentation failed for '" + d.section.title +
                              "': " + e.what());
        }
      }
    }
    res = measure();
    history.push_back(Coverage(res, papers.size()));
  }
  return history;
}

SurveyDocument AssembleSurvey(const Outline& outline, std::vector<SectionDraft> drafts,
                              const SurveyInputs& in, const WriterOptions& options,
                              const std::string& provider_id) {
  auto has = [&](SectionKind k) {
    return std::any_of(drafts.begin(), drafts.end(),
                       [k](const SectionDraft& d) { return d.section.kind == k; });
  };
  if (!has(SectionKind::kAbstract)) Fail(ErrorCode::kAssembly, "survey has no abstract");
  if (!has(SectionKind::kConclusion)) Fail(ErrorCode::kAssembly, "survey has no conclusion");

  const auto& papers = in.corpus->papers;
  std::string body = "# " + SurveyTitle(in.corpus->topic) + "\n";
  for (const auto& d : drafts) {
    body += "\n## " + d.section.title + "\n\n" + d.text + "\n";
  }
  SurveyDocument doc;
  doc.resolution = ResolveCitations(FindCitations(body), papers);

  std::vector<const Paper*> cited;
  for (const auto& p : papers) {
    if (doc.resolution.cited_ids.count(p.id)) cited.push_back(&p);
  }
  std::stable_sort(cited.begin(), cited.end(), [](const Paper* a, const Paper* b) {
    auto fa = text::ToLower(FamilyName(*a)), fb = text::ToLower(FamilyName(*b));
    if (fa != fb) return fa < fb;
    if (a->year != b->year) return a->year < b->year;
    return a->title < b->title;
  });
  body += "\n## References\n\n";
  for (const auto* p : cited) body += ReferenceEntry(*p) + "\n";
  if (cited.empty()) body += "No corpus papers were cited.\n";
  std::set<CitationKey> leftover = doc.resolution.unresolved;
  leftover.insert(doc.resolution.ambiguous.begin(), doc.resolution.ambiguous.end());
  if (!leftover.empty()) {
    body += "\n### Unresolved citations\n\n";
    for (const auto& k : leftover) {
      body += fmt::format("- {}, {} ({})\n", k.author_token, k.year,
                          doc.resolution.ambiguous.count(k) ? "ambiguous" : "not in corpus");
    }
  }

  doc.outline = outline;
  doc.citations = ExtractCitations(body);
  doc.word_count = WordCount(body);
  doc.coverage = Coverage(doc.resolution, papers.size());
  doc.min_met = doc.coverage >= options.coverage_min;
  doc.target_met = doc.coverage >= options.coverage_target;
  doc.provenance = {in.corpus->topic,      in.corpus_sha256, in.clusters_sha256,
                    provider_id,           in.timestamp,     doc.word_count,
                    doc.coverage,          papers.size(),    doc.resolution.cited_ids.size()};
  doc.markdown = RenderProvenance(doc.provenance) + body;
  doc.sections = std::move(drafts);
  return doc;
}

SurveyDocument WriteSurvey(const SurveyInputs& in, const WriterOptions& options,
                           infra::TextGenerator& generator, infra::RateManager* rate) {
  if (!in.corpus || !in.clusters) Fail(ErrorCode::kInvalidInput, "writer needs corpus and clusters");
  if (in.clusters->assignment.labels.size() != in.corpus->papers.size()) {
    Fail(ErrorCode::kInternalConsistency, "cluster labels do not match the corpus");
  }
  auto outline = PlanOutline(in.clusters->profiles, options.word_budget);
  std::vector<SectionDraft> drafts(outline.sections.size());
  const std::size_t width = std::max<std::size_t>(1, options.max_concurrency);
  for (std::size_t begin = 0; begin < drafts.size(); begin += width) {
    std::vector<std::future<SectionDraft>> inflight;
    for (std::size_t s = begin; s < std::min(drafts.size(), begin + width); ++s) {
      inflight.push_back(std::async(width == 1 ? std::launch::deferred : std::launch::async,
                                    [&, s] {
                                      return DraftSection(outline.sections[s], in, options,
                                                          generator, rate);
                                    }));
    }
    for (std::size_t s = begin; s < std::min(drafts.size(), begin + width); ++s) {
      drafts[s] = inflight[s - begin].get();
    }
  }
  std::vector<std::string> warnings;
  for (const auto& d : drafts) {
    if (d.failed) warnings.push_back("section '" + d.section.title + "' failed: " + d.failure);
  }
  std::size_t requests = 0;
  auto history = EnforceCoverage(drafts, in, options, generator, rate, &requests, &warnings);
  auto doc = AssembleSurvey(outline, std::move(drafts), in, options, generator.id());
  doc.coverage_history = std::move(history);
  doc.augmentation_requests = requests;
  doc.warnings = std::move(warnings);
  if (!doc.min_met) {
    doc.warnings.push_back(fmt::format("citation coverage {:.4f} below minimum {:.2f}",
                                       doc.coverage, options.coverage_min));
  }
  return doc;
}

}  // namespace litpipe::writer

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
#include <set>
#include <string>
#include <vector>

#include "acquisition/types.hpp"
#include "clustering/cluster.hpp"
#include "writer/citations.hpp"
#include "writer/outline.hpp"
#include "writer/provenance.hpp"

namespace litpipe::infra {
class TextGenerator;
class RateManager;
}  // namespace litpipe::infra

namespace litpipe::writer {

struct WriterOptions {
  std::size_t word_budget = kDefaultWordBudget;
  double coverage_min = 0.50;
  double coverage_target = 0.80;
  int max_passes = 2;
  std::size_t max_concurrency = 4;
  std::size_t excerpt_chars = 600;
  // Largest number of uncited papers listed in one augmentation request.
  std::size_t max_augment_papers = 40;
  std::uint64_t seed = 0;
};

struct SurveyInputs {
  const acquisition::Corpus* corpus = nullptr;
  const clustering::ClusteringResult* clusters = nullptr;
  std::string corpus_sha256;
  std::string clusters_sha256;
  std::string timestamp;
};

struct SectionDraft {
  Section section;
  std::string text;
  bool failed = false;
  std::string failure;
  std::size_t augmentations = 0;
};

struct SurveyDocument {
  std::string markdown;
  Outline outline;
  std::vector<SectionDraft> sections;
  std::set<CitationKey> citations;
  Resolution resolution;
  std::size_t word_count = 0;
  double coverage = 0.0;
  bool min_met = false;
  bool target_met = false;
  Provenance provenance;
  // Coverage after drafting, then after each augmentation pass.
  std::vector<double> coverage_history;
  std::size_t augmentation_requests = 0;
  std::vector<std::string> warnings;
};

// Papers a section's prompt lists, most influential first.
std::vector<const acquisition::Paper*> SectionPapers(const Section& section,
                                                     const SurveyInputs& inputs);

std::string BuildDraftPrompt(const Section& section, const SurveyInputs& inputs,
                             const std::vector<const acquisition::Paper*>& papers,
                             std::size_t excerpt_chars);

std::string BuildAugmentPrompt(const Section& section, const SurveyInputs& inputs,
                               const std::vector<const acquisition::Paper*>& uncited);

// Stub used when a section's provider call fails after retries. Lists the
// papers by title and year only; it cites nothing.
std::string FailedSectionStub(const std::string& reason,
                              const std::vector<const acquisition::Paper*>& papers);

SectionDraft DraftSection(const Section& section, const SurveyInputs& inputs,
                          const WriterOptions& options, infra::TextGenerator& generator,
                          infra::RateManager* rate);

// While coverage < coverage_min and passes remain: one augmentation request
// per cluster section that still has uncited members. Appends provider text
// to the section; never edits citations itself. Returns coverage after
// drafting followed by coverage after each pass.
std::vector<double> EnforceCoverage(std::vector<SectionDraft>& drafts, const SurveyInputs& inputs,
                                    const WriterOptions& options, infra::TextGenerator& generator,
                                    infra::RateManager* rate, std::size_t* requests,
                                    std::vector<std::string>* warnings);

// Headings, references, unresolved list and provenance header. Throws
// Error(kAssembly) if the abstract or conclusion is missing.
SurveyDocument AssembleSurvey(const Outline& outline, std::vector<SectionDraft> drafts,
                              const SurveyInputs& inputs, const WriterOptions& options,
                              const std::string& provider_id);

// Outline -> drafts -> coverage enforcement -> assembly.
SurveyDocument WriteSurvey(const SurveyInputs& inputs, const WriterOptions& options,
                           infra::TextGenerator& generator, infra::RateManager* rate);

std::string SurveyTitle(const std::string& topic);

}  // namespace litpipe::writer

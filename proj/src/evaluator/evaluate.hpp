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
#include "clustering/cluster.hpp"
#include "evaluator/report.hpp"

namespace litpipe::infra {
class TextGenerator;
class RateManager;
}  // namespace litpipe::infra

namespace litpipe::evaluator {

struct EvaluatorOptions {
  double coverage_min = 0.50;
  double coverage_target = 0.80;
  std::size_t max_concurrency = 4;
  std::uint64_t seed = 0;
};

// Distinct resolved corpus papers over corpus size. Throws
// Error(kInvalidInput) for an empty corpus.
double CitationCoverage(const std::string& survey, const std::vector<acquisition::Paper>& corpus);

DeterministicMetrics ComputeMetrics(const std::string& survey, const acquisition::Corpus& corpus,
                                    const clustering::ClusteringResult& clusters,
                                    double coverage_min, double coverage_target);

// Coverage is scored deterministically; the other eleven dimensions are
// judged (concurrently, through the rate manager if given). Missing
// dimensions produce an incomplete report instead of an exception.
EvaluationReport EvaluateSurvey(const std::string& survey, const acquisition::Corpus& corpus,
                                const clustering::ClusteringResult& clusters,
                                const EvaluatorOptions& options, infra::TextGenerator& judge,
                                infra::RateManager* rate, const std::string& timestamp);

}  // namespace litpipe::evaluator

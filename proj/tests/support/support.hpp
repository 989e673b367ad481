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

// Fixture builders shared by the unit and acceptance tests.

#include <stdlib.h>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "acquisition/types.hpp"
#include "clustering/matrix.hpp"
#include "common/error.hpp"
#include "common/files.hpp"
#include "infra/text_generator.hpp"
#include "pipeline/config.hpp"

namespace testing_support {

inline std::filesystem::path FixtureDir() { return LITPIPE_FIXTURE_DIR; }

class TempDir {
 public:
  TempDir() {
    std::string pattern = (std::filesystem::temp_directory_path() / "litpipe-test-XXXXXX").string();
    if (!::mkdtemp(pattern.data())) {
      litpipe::Fail(litpipe::ErrorCode::kIo, "mkdtemp failed");
    }
    path_ = pattern;
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const { return path_; }
  std::filesystem::path operator/(const std::string& child) const { return path_ / child; }

 private:
  std::filesystem::path path_;
};

inline litpipe::acquisition::Paper MakePaper(const std::string& id, const std::string& title,
                                             std::vector<std::string> authors, int year,
                                             std::int64_t citations = 10,
                                             std::string abstract = "") {
  litpipe::acquisition::Paper p;
  p.id = id;
  p.title = title;
  p.authors = std::move(authors);
  p.year = year;
  p.citation_count = citations;
  p.abstract = abstract.empty()
                   ? "This paper studies " + title +
                         " in detail, reporting experiments, ablations and an analysis of "
                         "failure cases across several benchmarks and model families, with "
                         "released code, data and evaluation scripts for reproduction."
                   : std::move(abstract);
  p.source = litpipe::acquisition::Source::kSemanticScholar;
  p.source_id = id;
  return p;
}

// Family names that are never prefixes of one another: "Q" + three letters.
inline std::string UniqueFamilyName(std::size_t i) {
  std::string s = "Q";
  s += static_cast<char>('a' + (i / 676) % 26);
  s += static_cast<char>('a' + (i / 26) % 26);
  s += static_cast<char>('a' + i % 26);
  return s;
}

// n papers with distinct first authors, so every rendered key resolves.
inline std::vector<litpipe::acquisition::Paper> DistinctAuthorCorpus(std::size_t n) {
  std::vector<litpipe::acquisition::Paper> out;
  for (std::size_t i = 0; i < n; ++i) {
    out.push_back(MakePaper("p" + std::to_string(i),
                            "Study number " + std::to_string(i) + " of agent behaviour",
                            {"A. " + UniqueFamilyName(i)}, 2020 + static_cast<int>(i % 6)));
  }
  return out;
}

// Gaussian blobs around centers drawn uniformly in [-1, 1]^d and rescaled
// so that the closest pair of centers is `separation` apart.
struct Blobs {
  litpipe::clustering::Matrix x;
  std::vector<int> truth;
};

inline Blobs MakeBlobs(int k, int per_blob, int dims, double sigma, double separation,
                       std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::normal_distribution<double> g(0.0, sigma);
  std::vector<std::vector<double>> centers(k, std::vector<double>(dims));
  for (auto& c : centers) {
    for (auto& v : c) v = u(rng);
  }
  double closest = 1e300;
  for (int a = 0; a < k; ++a) {
    for (int b = a + 1; b < k; ++b) {
      double s = 0.0;
      for (int d = 0; d < dims; ++d) s += (centers[a][d] - centers[b][d]) * (centers[a][d] - centers[b][d]);
      closest = std::min(closest, std::sqrt(s));
    }
  }
  for (auto& c : centers) {
    for (auto& v : c) v *= separation / closest;
  }
  Blobs out{litpipe::clustering::Matrix(static_cast<std::size_t>(k * per_blob),
                                        static_cast<std::size_t>(dims)),
            {}};
  for (int b = 0; b < k; ++b) {
    for (int i = 0; i < per_blob; ++i) {
      std::size_t row = static_cast<std::size_t>(b * per_blob + i);
      for (int d = 0; d < dims; ++d) out.x(row, d) = centers[b][d] + g(rng);
      out.truth.push_back(b);
    }
  }
  return out;
}

inline std::vector<std::vector<double>> Rows(const litpipe::clustering::Matrix& m) {
  std::vector<std::vector<double>> out;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    auto r = m.Row(i);
    out.emplace_back(r.begin(), r.end());
  }
  return out;
}

// Offline config over the 40-paper fixture with a pinned timestamp.
inline litpipe::pipeline::PipelineConfig MockConfig(const std::filesystem::path& out) {
  litpipe::pipeline::PipelineConfig c;
  c.topic = "LLM agents";
  c.out_dir = out;
  c.seed = 42;
  c.acquisition.target_paper_count = 40;
  c.providers.search_fixture = FixtureDir() / "corpus40.json";
  c.timestamp = "2026-01-15T00:00:00Z";
  return c;
}

// Generator whose replies come from a callback; counts calls.
class ScriptedGenerator : public litpipe::infra::TextGenerator {
 public:
  using Responder = std::function<std::string(const std::string& prompt, int call)>;
  explicit ScriptedGenerator(Responder responder) : responder_(std::move(responder)) {}
  litpipe::infra::GenerationResponse Generate(
      const litpipe::infra::GenerationRequest& request) override {
    prompts.push_back(request.prompt);
    return {responder_(request.prompt, calls++), "scripted"};
  }
  std::string id() const override { return "scripted"; }
  int calls = 0;
  std::vector<std::string> prompts;

 private:
  Responder responder_;
};

inline bool SameBytes(const std::filesystem::path& a, const std::filesystem::path& b) {
  return litpipe::files::ReadFile(a) == litpipe::files::ReadFile(b);
}

}  // namespace testing_support

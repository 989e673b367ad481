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
#include <memory>
#include <optional>
#include <string>

#include "infra/http.hpp"

namespace litpipe::infra {

struct GenerationRequest {
  std::string prompt;
  int max_output_tokens = 4096;
  double temperature = 0.0;
  std::optional<std::uint64_t> seed;
};

struct GenerationResponse {
  std::string text;
  std::string provider_id;
};

// Text-generation provider contract shared by the writer, the cluster namer
// and the judge. Failures are reported as litpipe::Error; kTransient and
// kRateLimited are retried by callers.
class TextGenerator {
 public:
  virtual ~TextGenerator() = default;
  virtual GenerationResponse Generate(const GenerationRequest& request) = 0;
  virtual std::string id() const = 0;
};

struct MockGeneratorOptions {
  std::uint64_t seed = 0;
  // Share of the listed papers a drafted section cites, in listed order.
  double draft_citation_fraction = 1.0;
  double augment_citation_fraction = 1.0;
};

// Seed-deterministic offline provider. It reads the structured prompt layout
// (see prompt.hpp) and writes template prose that cites the listed papers,
// judge responses in the SCORE/JUSTIFICATION/EVIDENCE contract, and cluster
// titles built from key terms.
class MockTextGenerator final : public TextGenerator {
 public:
  explicit MockTextGenerator(MockGeneratorOptions options = {}) : options_(options) {}

  GenerationResponse Generate(const GenerationRequest& request) override;
  std::string id() const override { return "mock"; }

 private:
  MockGeneratorOptions options_;
};

// JSON over HTTP: POST {prompt, max_output_tokens, temperature, seed} and
// expect {text, provider_id}.
std::unique_ptr<TextGenerator> MakeHttpTextGenerator(std::string endpoint,
                                                     std::shared_ptr<HttpTransport> transport);

}  // namespace litpipe::infra

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

#include "writer/provenance.hpp"

#include <sstream>

#include <fmt/format.h>

#include "common/error.hpp"
#include "common/text.hpp"

namespace litpipe::writer {
namespace {
constexpr std::string_view kOpen = "<!-- litpipe-provenance";
}

std::string RenderProvenance(const Provenance& p) {
  std::string out(kOpen);
  out += '\n';
  out += fmt::format("topic: {}\n", p.topic);
  out += fmt::format("corpus_sha256: {}\n", p.corpus_sha256);
  out += fmt::format("clusters_sha256: {}\n", p.clusters_sha256);
  out += fmt::format("provider: {}\n", p.provider_id);
  out += fmt::format("timestamp: {}\n", p.timestamp);
  out += fmt::format("word_count: {}\n", p.word_count);
  out += fmt::format("coverage: {:.4f}\n", p.coverage);
  out += fmt::format("cited_papers: {}\n", p.cited_papers);
  out += fmt::format("corpus_size: {}\n", p.corpus_size);
  out += "-->\n";
  return out;
}

std::optional<Provenance> ParseProvenance(const std::string& markdown) {
  auto start = markdown.find(kOpen);
  if (start == std::string::npos) return std::nullopt;
  auto end = markdown.find("-->", start);
  if (end == std::string::npos) Fail(ErrorCode::kParse, "unterminated provenance header");
  std::istringstream in(markdown.substr(start + kOpen.size(), end - start - kOpen.size()));
  std::map<std::string, std::string> kv;
  std::string line;
  while (std::getline(in, line)) {
    auto colon = line.find(':');
    if (colon == std::string::npos) continue;
    kv[text::Trim(line.substr(0, colon))] = text::Trim(line.substr(colon + 1));
  }
  Provenance p;
  try {
    p.topic = kv.at("topic");
    p.corpus_sha256 = kv.at("corpus_sha256");
    p.clusters_sha256 = kv.at("clusters_sha256");
    p.provider_id = kv.at("provider");
    p.timestamp = kv.at("timestamp");
    p.word_count = std::stoul(kv.at("word_count"));
    p.coverage = std::stod(kv.at("coverage"));
    p.cited_papers = std::stoul(kv.at("cited_papers"));
    p.corpus_size = std::stoul(kv.at("corpus_size"));
  } catch (const std::exception& e) {
    Fail(ErrorCode::kParse, std::string("malformed provenance header: ") + e.what());
  }
  return p;
}

}  // namespace litpipe::writer

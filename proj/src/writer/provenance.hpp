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

#include <map>
#include <optional>
#include <string>

namespace litpipe::writer {

struct Provenance {
  std::string topic;
  std::string corpus_sha256;
  std::string clusters_sha256;
  std::string provider_id;
  std::string timestamp;
  std::size_t word_count = 0;
  double coverage = 0.0;
  std::size_t corpus_size = 0;
  std::size_t cited_papers = 0;

  bool operator==(const Provenance&) const = default;
};

// "<!-- litpipe-provenance\nkey: value\n...-->\n"
std::string RenderProvenance(const Provenance& p);

// Reads the header back from the top of a survey; nullopt when absent.
// Throws Error(kParse) on a malformed header.
std::optional<Provenance> ParseProvenance(const std::string& markdown);

}  // namespace litpipe::writer

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

#include "infra/prompt.hpp"

#include <cctype>
#include <sstream>

#include "common/text.hpp"

namespace litpipe::infra {
namespace {

// "CITE: [X, 2020] | TITLE: T | YEAR: 2020" -> key/value pairs.
std::map<std::string, std::string> SplitPipeFields(std::string_view line) {
  std::map<std::string, std::string> out;
  std::size_t start = 0;
  while (start <= line.size()) {
    auto bar = line.find(" | ", start);
    auto part = line.substr(start, bar == std::string_view::npos ? std::string_view::npos
                                                                  : bar - start);
    if (auto colon = part.find(':'); colon != std::string_view::npos) {
      out[text::Trim(part.substr(0, colon))] = text::Trim(part.substr(colon + 1));
    }
    if (bar == std::string_view::npos) break;
    start = bar + 3;
  }
  return out;
}

bool IsFieldName(std::string_view name) {
  if (name.empty()) return false;
  for (char c : name) {
    if (!(std::isupper(static_cast<unsigned char>(c)) || c == '_')) return false;
  }
  return true;
}

}  // namespace

std::string PromptFields::Get(const std::string& key, const std::string& fallback) const {
  auto it = fields.find(key);
  return it == fields.end() ? fallback : it->second;
}

PromptFields ParsePrompt(std::string_view prompt) {
  PromptFields out;
  std::istringstream in{std::string(prompt)};
  std::string line;
  bool in_survey = false;
  std::string survey;
  while (std::getline(in, line)) {
    if (in_survey) {
      survey += line;
      survey += '\n';
      continue;
    }
    std::string trimmed = text::Trim(line);
    if (trimmed == "SURVEY:") {
      in_survey = true;
      continue;
    }
    if (text::StartsWith(trimmed, "- CITE:")) {
      auto kv = SplitPipeFields(std::string_view(trimmed).substr(2));
      out.papers.push_back({kv["CITE"], kv["TITLE"], kv["YEAR"]});
      continue;
    }
    auto colon = trimmed.find(':');
    if (colon == std::string::npos) continue;
    auto name = trimmed.substr(0, colon);
    if (!IsFieldName(name)) continue;
    auto value = text::Trim(std::string_view(trimmed).substr(colon + 1));
    if (name == "TASK") {
      out.task = value;
    } else if (!out.fields.count(name)) {
      out.fields[name] = value;
    }
  }
  out.survey = std::move(survey);
  return out;
}

}  // namespace litpipe::infra

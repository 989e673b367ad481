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

#include "evaluator/judge.hpp"

#include <cmath>
#include <sstream>

#include <fmt/format.h>

#include "common/error.hpp"
#include "common/text.hpp"
#include "infra/prompt.hpp"
#include "infra/rate_manager.hpp"
#include "infra/text_generator.hpp"

namespace litpipe::evaluator {
namespace {

// "**SCORE:** 7" / "- SCORE: 7" -> label "SCORE", value "7".
bool SplitLabel(const std::string& raw, std::string& label, std::string& value) {
  std::string line = text::Trim(raw);
  std::size_t i = 0;
  while (i < line.size() && (line[i] == '*' || line[i] == '-' || line[i] == '#' || line[i] == ' ')) {
    ++i;
  }
  auto colon = line.find(':', i);
  if (colon == std::string::npos) return false;
  label = line.substr(i, colon - i);
  std::erase(label, '*');
  label = text::Trim(label);
  for (char c : label) {
    if (!(std::isupper(static_cast<unsigned char>(c)) || c == '_')) return false;
  }
  value = text::Trim(line.substr(colon + 1));
  while (!value.empty() && value.front() == '*') value.erase(0, 1);
  while (!value.empty() && value.back() == '*') value.pop_back();
  value = text::Trim(value);
  return !label.empty();
}

std::string Unquote(std::string s) {
  s = text::Trim(s);
  auto strip = [&s](std::string_view open, std::string_view close) {
    if (s.size() >= open.size() + close.size() && s.starts_with(open) && s.ends_with(close)) {
      s = s.substr(open.size(), s.size() - open.size() - close.size());
      return true;
    }
    return false;
  };
  strip("\"", "\"") || strip("\xe2\x80\x9c", "\xe2\x80\x9d") || strip("'", "'");
  return text::Trim(s);
}

}  // namespace

std::optional<JudgeReply> ParseJudgeReply(const std::string& reply) {
  std::istringstream in(reply);
  std::string line, label, value;
  JudgeReply out;
  bool have_score = false;
  while (std::getline(in, line)) {
    if (!SplitLabel(line, label, value)) continue;
    if (label == "SCORE" && !have_score) {
      try {
        std::size_t used = 0;
        double s = std::stod(value, &used);
        if (!std::isfinite(s)) return std::nullopt;
        out.score = s;
        have_score = true;
      } catch (const std::exception&) {
        return std::nullopt;
      }
    } else if (label == "JUSTIFICATION" && out.justification.empty()) {
      out.justification = value;
    } else if (label == "EVIDENCE") {
      auto e = Unquote(value);
      if (!e.empty()) out.evidence.push_back(e);
    }
  }
  if (!have_score || out.justification.empty() || out.evidence.size() < kMinEvidence) {
    return std::nullopt;
  }
  return out;
}

std::string BuildJudgePrompt(const DimensionSpec& dim, const JudgeContext& ctx) {
  std::string p = fmt::format("TASK: {}\n", infra::task::kJudgeDimension);
  p += fmt::format("DIMENSION: {}\n", dim.name);
  p += fmt::format("CATEGORY: {}\n", CategoryTitle(dim.category));
  p += fmt::format("WEIGHT: {:.2f}\n", dim.weight);
  p += "TOPIC: " + text::CollapseWhitespace(ctx.topic) + "\n";
  p += fmt::format("CORPUS_SIZE: {}\n", ctx.corpus_size);
  p += fmt::format("CLUSTER_COUNT: {}\n", ctx.cluster_count);
  p += fmt::format("CITATION_COVERAGE: {:.4f}\n", ctx.coverage);
  p += fmt::format("WORD_COUNT: {}\n", ctx.word_count);
  p += fmt::format("CLUSTER_REPRESENTATION: {:.4f}\n", ctx.cluster_representation);
  p += fmt::format("FOCUS: {}\n", dim.focus);
  p += "INSTRUCTIONS: Score the survey below on this one dimension from 0 to 10. Reply with a "
       "line 'SCORE: <number>', a line 'JUSTIFICATION: <one paragraph>', and at least three "
       "lines 'EVIDENCE: \"<verbatim quote from the survey>\"'.\n";
  p += "SURVEY:\n";
  p += ctx.survey;
  return p;
}

std::string BuildComparePrompt(const JudgeContext& ctx) {
  std::string p = fmt::format("TASK: {}\n", infra::task::kCompareStandards);
  p += "TOPIC: " + text::CollapseWhitespace(ctx.topic) + "\n";
  p += fmt::format("CORPUS_SIZE: {}\nWORD_COUNT: {}\n", ctx.corpus_size, ctx.word_count);
  p += "INSTRUCTIONS: Compare the survey with journal surveys, conference surveys and workshop "
       "papers. Reply with one line each: 'VS_ACM_COMPUTING_SURVEYS: ...', "
       "'VS_CONFERENCE_SURVEYS: ...', 'VS_WORKSHOP_PAPERS: ...'.\n";
  p += "SURVEY:\n";
  p += ctx.survey;
  return p;
}

JudgeOutcome JudgeDimension(const DimensionSpec& dim, const JudgeContext& ctx,
                            infra::TextGenerator& judge, infra::RateManager* rate,
                            std::uint64_t seed) {
  JudgeOutcome out;
  const auto prompt = BuildJudgePrompt(dim, ctx);
  for (int attempt = 1; attempt <= 2 && !out.reply; ++attempt) {
    ++out.attempts;
    infra::GenerationRequest req{prompt, 1024, 0.0, seed + static_cast<std::uint64_t>(attempt - 1)};
    try {
      auto call = [&] { return judge.Generate(req); };
      auto resp = rate ? rate->Call("judge", call) : call();
      out.reply = ParseJudgeReply(resp.text);
      if (!out.reply) {
        out.warnings.push_back(fmt::format("{}: unparseable judge reply (attempt {})", dim.name,
                                           attempt));
      }
    } catch (const Error& e) {
      out.warnings.push_back(fmt::format("{}: judge call failed: {}", dim.name, e.what()));
      break;
    }
  }
  if (out.reply && (out.reply->score < 0.0 || out.reply->score > 10.0)) {
    out.warnings.push_back(
        fmt::format("{}: score {} clamped to [0, 10]", dim.name, out.reply->score));
    out.reply->score = std::clamp(out.reply->score, 0.0, 10.0);
  }
  if (!out.reply) out.warnings.push_back(fmt::format("{}: dimension missing", dim.name));
  return out;
}

}  // namespace litpipe::evaluator

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

#include "acquisition/query_expansion.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

#include "common/error.hpp"
#include "common/text.hpp"
#include "infra/prompt.hpp"
#include "infra/text_generator.hpp"

namespace litpipe::acquisition {
namespace {

using Tokens = std::vector<std::string>;

struct Acronym {
  std::string_view short_form;
  std::string_view long_form;
};

constexpr Acronym kAcronyms[] = {
    {"LLM", "large language model"},
    {"LLMs", "large language models"},
    {"LM", "language model"},
    {"RAG", "retrieval-augmented generation"},
    {"RLHF", "reinforcement learning from human feedback"},
    {"RLAIF", "reinforcement learning from AI feedback"},
    {"ICL", "in-context learning"},
    {"CoT", "chain-of-thought"},
    {"NLP", "natural language processing"},
    {"RL", "reinforcement learning"},
    {"VLM", "vision-language model"},
    {"MLLM", "multimodal large language model"},
    {"GNN", "graph neural network"},
    {"DPO", "direct preference optimization"},
    {"PPO", "proximal policy optimization"},
    {"PEFT", "parameter-efficient fine-tuning"},
    {"SFT", "supervised fine-tuning"},
    {"LoRA", "low-rank adaptation"},
    {"QA", "question answering"},
    {"KG", "knowledge graph"},
    {"MoE", "mixture of experts"},
    {"ViT", "vision transformer"},
    {"GAN", "generative adversarial network"},
    {"NER", "named entity recognition"},
    {"ASR", "automatic speech recognition"},
    {"AI", "artificial intelligence"},
    {"ML", "machine learning"},
    {"CV", "computer vision"},
};

// Lower-case phrase -> substitutes.
const std::map<std::string, std::vector<std::string>>& Synonyms() {
  static const std::map<std::string, std::vector<std::string>> kTable = {
      {"llm", {"language model", "foundation model"}},
      {"llms", {"language models", "foundation models"}},
      {"large language model", {"language model", "foundation model"}},
      {"large language models", {"language models", "foundation models"}},
      {"agents", {"agent systems", "autonomous agents"}},
      {"agent", {"autonomous agent"}},
      {"tuning", {"fine-tuning", "training"}},
      {"instruction", {"instruction-following"}},
      {"alignment", {"value alignment", "preference alignment"}},
      {"synthetic data", {"data synthesis", "generated data", "data augmentation"}},
      {"multimodal", {"multi-modal", "vision-language"}},
      {"generation", {"synthesis"}},
      {"retrieval", {"search"}},
      {"evaluation", {"benchmarking", "assessment"}},
      {"reasoning", {"inference", "problem solving"}},
      {"clustering", {"grouping"}},
      {"summarization", {"summary generation"}},
      {"survey", {"review", "overview"}},
      {"learning", {"training"}},
  };
  return kTable;
}

// Lower-case word -> related technical terms.
const std::map<std::string, std::vector<std::string>>& Related() {
  static const std::map<std::string, std::vector<std::string>> kTable = {
      {"agents", {"agent architectures", "multi-agent systems", "tool-augmented language models",
                  "agent planning", "agent memory"}},
      {"llm", {"prompting", "foundation models", "transformer language models"}},
      {"instruction", {"instruction following", "task generalization", "supervised fine-tuning"}},
      {"tuning", {"parameter-efficient fine-tuning", "supervised fine-tuning"}},
      {"rlhf", {"reward modeling", "preference optimization", "human feedback"}},
      {"alignment", {"reward modeling", "preference optimization", "AI safety"}},
      {"synthetic", {"data generation", "self-instruct", "distillation data"}},
      {"data", {"dataset construction", "data quality"}},
      {"in-context", {"few-shot prompting", "demonstration selection", "prompt engineering"}},
      {"icl", {"few-shot prompting", "demonstration selection", "prompt engineering"}},
      {"multimodal", {"vision-language models", "visual instruction tuning",
                      "image-text alignment"}},
      {"rl", {"policy optimization", "reward design"}},
      {"reinforcement", {"policy optimization", "reward design"}},
      {"rag", {"dense retrieval", "knowledge-grounded generation", "vector search"}},
      {"retrieval", {"dense retrieval", "knowledge-grounded generation", "vector search"}},
      {"reasoning", {"chain-of-thought", "multi-step reasoning"}},
      {"evaluation", {"benchmarks", "evaluation metrics"}},
      {"clustering", {"topic modeling", "document embeddings"}},
  };
  return kTable;
}

constexpr std::string_view kFacets[] = {
    "{} survey",          "{} benchmark",       "{} evaluation",     "{} applications",
    "{} methods",         "{} framework",       "{} challenges",     "{} limitations",
    "{} datasets",        "recent advances in {}", "{} state of the art", "{} empirical study",
    "{} analysis",        "{} taxonomy",        "{} open problems",  "{} efficiency",
    "{} robustness",      "{} scaling",         "{} theory",         "{} review",
};

std::string Lower(std::string_view s) { return text::ToLower(s); }

std::string JoinTokens(const Tokens& t) { return text::Join(t, " "); }

// Replaces every occurrence of `phrase` (lower-case token sequence) in
// `tokens` by `replacement`; returns nullopt when the phrase is absent.
std::optional<std::string> ReplacePhrase(const Tokens& tokens, const Tokens& phrase,
                                         const std::string& replacement) {
  if (phrase.empty() || phrase.size() > tokens.size()) return std::nullopt;
  Tokens out;
  bool hit = false;
  for (std::size_t i = 0; i < tokens.size();) {
    bool match = i + phrase.size() <= tokens.size();
    for (std::size_t k = 0; match && k < phrase.size(); ++k) {
      match = Lower(tokens[i + k]) == phrase[k];
    }
    if (match) {
      out.push_back(replacement);
      i += phrase.size();
      hit = true;
    } else {
      out.push_back(tokens[i++]);
    }
  }
  if (!hit) return std::nullopt;
  return JoinTokens(out);
}

Tokens LowerTokens(std::string_view s) {
  Tokens t = text::SplitWhitespace(s);
  for (auto& w : t) w = Lower(w);
  return t;
}

std::string Format(std::string_view pattern, const std::string& topic) {
  std::string s(pattern);
  s.replace(s.find("{}"), 2, topic);
  return s;
}

}  // namespace

std::string NormalizeTopic(std::string_view raw) {
  auto topic = text::CollapseWhitespace(text::Trim(raw));
  if (topic.empty()) Fail(ErrorCode::kInvalidInput, "topic must be non-empty");
  return topic;
}

QuerySet ExpandQueries(std::string_view raw_topic, infra::TextGenerator* generator) {
  const std::string topic = NormalizeTopic(raw_topic);
  const Tokens tokens = text::SplitWhitespace(topic);
  const Tokens lower = LowerTokens(topic);

  std::vector<std::string> acronym, synonym, related, compound;

  for (const auto& a : kAcronyms) {
    if (auto r = ReplacePhrase(tokens, {Lower(a.short_form)}, std::string(a.long_form))) {
      acronym.push_back(*r);
    }
    if (auto r = ReplacePhrase(tokens, LowerTokens(a.long_form), std::string(a.short_form))) {
      acronym.push_back(*r);
    }
  }

  for (const auto& [phrase, subs] : Synonyms()) {
    for (const auto& sub : subs) {
      if (auto r = ReplacePhrase(tokens, LowerTokens(phrase), sub)) synonym.push_back(*r);
    }
  }
  if (tokens.size() >= 2 && !Lower(tokens[0]).ends_with("-based")) {
    Tokens t = tokens;
    t[0] += "-based";
    synonym.push_back(JoinTokens(t));
  }
  {
    Tokens t = tokens;
    auto& last = t.back();
    if (last.size() > 3 && last.back() == 's') {
      last.pop_back();
    } else {
      last.push_back('s');
    }
    synonym.push_back(JoinTokens(t));
  }
  if (topic.find('-') != std::string::npos) {
    std::string t = topic;
    std::replace(t.begin(), t.end(), '-', ' ');
    synonym.push_back(t);
  }

  for (const auto& w : lower) {
    auto it = Related().find(w);
    if (it == Related().end() && w.size() > 3 && w.back() == 's') {
      it = Related().find(w.substr(0, w.size() - 1));
    }
    if (it == Related().end() && w.back() != 's') it = Related().find(w + "s");
    if (it != Related().end()) related.insert(related.end(), it->second.begin(), it->second.end());
  }
  if (generator) {
    infra::GenerationRequest req;
    req.prompt = std::string("TASK: ") + std::string(infra::task::kExpandQueries) +
                 "\nTOPIC: " + topic +
                 "\nINSTRUCTIONS: List additional scholarly search queries for this topic, one "
                 "per line, covering synonyms, related technical terms and acronyms.\n";
    req.max_output_tokens = 512;
    try {
      std::istringstream in(generator->Generate(req).text);
      std::string line;
      while (std::getline(in, line)) {
        auto q = text::CollapseWhitespace(text::Trim(line));
        if (!q.empty()) related.push_back(q);
      }
    } catch (const std::exception&) {
      // The offline tables already cover the required rules.
    }
  }

  Tokens content;
  for (const auto& t : tokens) {
    if (!text::IsStopword(Lower(t))) content.push_back(t);
  }
  if (content.size() >= 2) compound.push_back(text::Join(content, " AND "));
  if (!synonym.empty()) compound.push_back("(" + topic + ") OR (" + synonym.front() + ")");
  if (!acronym.empty()) compound.push_back("(" + topic + ") OR (" + acronym.front() + ")");
  compound.push_back(topic + " AND survey");
  compound.push_back(topic + " AND (benchmark OR evaluation)");
  compound.push_back(topic + " AND (method OR framework)");

  QuerySet out;
  std::set<std::string> seen;
  auto add = [&](const std::string& q, ExpansionRule rule) {
    if (out.queries.size() >= kMaxQueries) return;
    auto norm = text::CollapseWhitespace(text::Trim(q));
    if (norm.empty() || !seen.insert(Lower(norm)).second) return;
    out.queries.push_back(norm);
    out.provenance.push_back(rule);
  };

  add(topic, ExpansionRule::kVerbatim);
  const std::pair<const std::vector<std::string>*, ExpansionRule> lanes[] = {
      {&acronym, ExpansionRule::kAcronym},
      {&synonym, ExpansionRule::kSynonym},
      {&related, ExpansionRule::kRelatedTerm},
      {&compound, ExpansionRule::kBooleanCompound},
  };
  std::size_t longest = 0;
  for (const auto& [lane, rule] : lanes) longest = std::max(longest, lane->size());
  for (std::size_t i = 0; i < longest; ++i) {
    for (const auto& [lane, rule] : lanes) {
      if (i < lane->size()) add((*lane)[i], rule);
    }
  }
  for (auto facet : kFacets) {
    if (out.queries.size() >= kMinQueries) break;
    add(Format(facet, topic), ExpansionRule::kRelatedTerm);
  }
  return out;
}

}  // namespace litpipe::acquisition

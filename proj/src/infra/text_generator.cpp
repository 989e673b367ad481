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

#include "infra/text_generator.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <random>

#include <fmt/format.h>
#include <json.hpp>

#include "common/error.hpp"
#include "common/text.hpp"
#include "infra/prompt.hpp"

namespace litpipe::infra {
namespace {

std::uint64_t Fnv1a(std::string_view s) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

std::vector<std::string> SplitTerms(const std::string& csv) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : csv + ",") {
    if (c == ',') {
      auto t = text::Trim(cur);
      if (!t.empty()) out.push_back(t);
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  return out;
}

std::string SafeTitle(std::string title) {
  std::replace(title.begin(), title.end(), '[', '(');
  std::replace(title.begin(), title.end(), ']', ')');
  return title;
}

class ProseWriter {
 public:
  ProseWriter(std::uint64_t seed, std::vector<std::string> terms, std::string section)
      : rng_(seed), terms_(std::move(terms)), section_(std::move(section)) {
    if (terms_.empty()) terms_ = text::Words(section_);
    if (terms_.empty()) terms_ = {"methods"};
    if (terms_.size() < 2) terms_.push_back(terms_.front());
  }

  std::string Cite(const PromptPaper& paper) {
    static constexpr std::array<std::string_view, 4> kTemplates = {
        "{title} {cite} examines {a} in the context of {b}, and its findings connect directly "
        "to the broader {section} agenda.",
        "Building on related ideas, {title} {cite} contrasts {a}-centric designs with approaches "
        "that emphasize {b}.",
        "Evidence from {title} {cite} suggests that progress on {a} depends on how {b} is "
        "operationalized.",
        "{title} {cite} offers a complementary perspective, linking {a} to practical questions "
        "of {b}.",
    };
    auto [a, b] = TermPair();
    auto s = fmt::format(fmt::runtime(kTemplates[Pick(kTemplates.size())]),
                         fmt::arg("title", SafeTitle(paper.title)), fmt::arg("cite", paper.cite),
                         fmt::arg("a", a), fmt::arg("b", b), fmt::arg("section", section_));
    words_ += text::SplitWhitespace(s).size() - text::SplitWhitespace(paper.cite).size();
    return s;
  }

  std::string Filler() {
    static constexpr std::array<std::string_view, 6> kTemplates = {
        "Taken together, these studies indicate that {a} and {b} are converging rather than "
        "competing research directions.",
        "A recurring pattern across the {section} literature is the tension between {a} and {b}.",
        "Methodological choices around {a} explain much of the variation in reported outcomes "
        "for {b}.",
        "Several open questions remain regarding the evaluation of {a} under realistic {b} "
        "conditions.",
        "Comparing these lines of work highlights how assumptions about {a} shape the design of "
        "{b} systems.",
        "The trajectory of this area points toward tighter integration of {a} with {b}.",
    };
    auto [a, b] = TermPair();
    auto s = fmt::format(fmt::runtime(kTemplates[Pick(kTemplates.size())]), fmt::arg("a", a),
                         fmt::arg("b", b), fmt::arg("section", section_));
    words_ += text::SplitWhitespace(s).size();
    return s;
  }

  std::size_t words() const { return words_; }

 private:
  std::size_t Pick(std::size_t n) { return static_cast<std::size_t>(rng_() % n); }

  std::pair<std::string, std::string> TermPair() {
    std::size_t i = Pick(terms_.size());
    std::size_t j = (i + 1 + Pick(terms_.size() - 1)) % terms_.size();
    return {terms_[i], terms_[j]};
  }

  std::mt19937_64 rng_;
  std::vector<std::string> terms_;
  std::string section_;
  std::size_t words_ = 0;
};

std::string Paragraphs(const std::vector<std::string>& sentences, std::size_t per_paragraph) {
  std::string out;
  for (std::size_t i = 0; i < sentences.size(); ++i) {
    if (i && i % per_paragraph == 0) out += "\n\n";
    else if (i) out += ' ';
    out += sentences[i];
  }
  return out;
}

std::size_t TakeCount(std::size_t n, double fraction) {
  if (fraction >= 1.0) return n;
  if (fraction <= 0.0) return 0;
  return static_cast<std::size_t>(std::llround(fraction * static_cast<double>(n)));
}

std::string DraftSection(const PromptFields& p, std::uint64_t seed, double fraction) {
  std::size_t budget = 0;
  try {
    budget = std::stoul(p.Get("WORD_BUDGET", "300"));
  } catch (...) {
    budget = 300;
  }
  ProseWriter w(seed, SplitTerms(p.Get("KEY_TERMS")), p.Get("SECTION", p.Get("TOPIC", "this")));
  std::size_t cited = TakeCount(p.papers.size(), fraction);

  std::vector<std::string> cites;
  for (std::size_t i = 0; i < cited; ++i) cites.push_back(w.Cite(p.papers[i]));

  if (p.Get("SECTION_KIND") != "cluster-section") {
    std::vector<std::string> all = cites;
    while (w.words() < budget) all.push_back(w.Filler());
    return Paragraphs(all, 5);
  }

  std::vector<std::string> overview;
  for (int i = 0; i < 3; ++i) overview.push_back(w.Filler());
  std::vector<std::string> analysis;
  for (std::size_t i = 0; i < cites.size(); ++i) {
    analysis.push_back(cites[i]);
    if (i % 3 == 2) analysis.push_back(w.Filler());
  }
  std::vector<std::string> open;
  do {
    open.push_back(w.Filler());
  } while (w.words() < budget);

  return "### Overview\n\n" + Paragraphs(overview, 5) + "\n\n### Comparative Analysis\n\n" +
         Paragraphs(analysis, 4) + "\n\n### Open Problems\n\n" + Paragraphs(open, 5);
}

std::string Augment(const PromptFields& p, std::uint64_t seed, double fraction) {
  ProseWriter w(seed, SplitTerms(p.Get("KEY_TERMS")), p.Get("SECTION", "this"));
  std::vector<std::string> s;
  std::size_t cited = TakeCount(p.papers.size(), fraction);
  for (std::size_t i = 0; i < cited; ++i) s.push_back(w.Cite(p.papers[i]));
  if (!s.empty()) s.push_back(w.Filler());
  return Paragraphs(s, 4);
}

std::vector<std::string> EvidenceSentences(const std::string& survey, std::size_t want) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : survey) {
    if (c == '\n' && !cur.empty() && (cur[0] == '#' || cur[0] == '<' || cur[0] == '-')) {
      cur.clear();
      continue;
    }
    cur.push_back(c == '\n' ? ' ' : c);
    if (c == '.') {
      auto t = text::Trim(cur);
      cur.clear();
      if (text::SplitWhitespace(t).size() >= 8 && t.find('"') == std::string::npos) {
        out.push_back(t);
        if (out.size() == want) break;
      }
    }
  }
  while (out.size() < want) out.push_back("The survey text provides limited material here.");
  return out;
}

std::string Judge(const PromptFields& p, std::uint64_t seed) {
  auto dim = p.Get("DIMENSION", "overall");
  std::uint64_t h = Fnv1a(dim) ^ (seed * 0x9E3779B97F4A7C15ull);
  double score = 6.5 + static_cast<double>(h % 30) / 10.0;
  std::string out = fmt::format("SCORE: {:.1f}\n", score);
  out += fmt::format(
      "JUSTIFICATION: Deterministic mock assessment of {} for a survey on {} built from {} "
      "papers in {} clusters.\n",
      dim, p.Get("TOPIC", "the topic"), p.Get("CORPUS_SIZE", "?"), p.Get("CLUSTER_COUNT", "?"));
  for (const auto& e : EvidenceSentences(p.survey, 3)) out += "EVIDENCE: \"" + e + "\"\n";
  return out;
}

std::string Compare(const PromptFields& p) {
  auto topic = p.Get("TOPIC", "the topic");
  return fmt::format(
      "VS_ACM_COMPUTING_SURVEYS: Narrower in scope than a journal survey on {0}; synthesis is "
      "template-driven.\n"
      "VS_CONFERENCE_SURVEYS: Comparable in length and citation density to conference surveys "
      "on {0}.\n"
      "VS_WORKSHOP_PAPERS: Broader coverage than a typical workshop overview of {0}.\n",
      topic);
}

std::string NameCluster(const PromptFields& p) {
  auto terms = SplitTerms(p.Get("KEY_TERMS"));
  if (terms.empty()) return "Miscellaneous";
  std::vector<std::string> top(terms.begin(), terms.begin() + std::min<std::size_t>(3, terms.size()));
  for (auto& t : top) t = text::TitleCase(t);
  if (top.size() == 1) return top[0];
  auto last = top.back();
  top.pop_back();
  return text::Join(top, ", ") + " and " + last;
}

}  // namespace

GenerationResponse MockTextGenerator::Generate(const GenerationRequest& request) {
  auto p = ParsePrompt(request.prompt);
  std::uint64_t seed = options_.seed ^ Fnv1a(request.prompt) ^ request.seed.value_or(0);
  std::string out;
  if (p.task == task::kDraftSection) {
    out = DraftSection(p, seed, options_.draft_citation_fraction);
  } else if (p.task == task::kAugmentCoverage) {
    out = Augment(p, seed, options_.augment_citation_fraction);
  } else if (p.task == task::kJudgeDimension) {
    out = Judge(p, options_.seed);
  } else if (p.task == task::kCompareStandards) {
    out = Compare(p);
  } else if (p.task == task::kNameCluster) {
    out = NameCluster(p);
  } else if (p.task == task::kExpandQueries) {
    out = "";
  } else {
    out = "Mock response.";
  }
  return {std::move(out), id()};
}

namespace {

class HttpTextGenerator final : public TextGenerator {
 public:
  HttpTextGenerator(std::string endpoint, std::shared_ptr<HttpTransport> transport)
      : endpoint_(std::move(endpoint)), transport_(std::move(transport)) {}

  GenerationResponse Generate(const GenerationRequest& request) override {
    nlohmann::json body = {{"prompt", request.prompt},
                           {"max_output_tokens", request.max_output_tokens},
                           {"temperature", request.temperature}};
    body["seed"] = request.seed ? nlohmann::json(*request.seed) : nlohmann::json(nullptr);
    HttpRequest req;
    req.method = "POST";
    req.url = endpoint_;
    req.body = body.dump();
    req.content_type = "application/json";
    auto resp = transport_->Send(req);
    ThrowForStatus(resp, "generation provider");
    try {
      auto j = nlohmann::json::parse(resp.body);
      return {j.at("text").get<std::string>(), j.value("provider_id", std::string("external"))};
    } catch (const nlohmann::json::exception& e) {
      Fail(ErrorCode::kProtocol, std::string("malformed generation response: ") + e.what());
    }
  }

  std::string id() const override { return "external"; }

 private:
  std::string endpoint_;
  std::shared_ptr<HttpTransport> transport_;
};

}  // namespace

std::unique_ptr<TextGenerator> MakeHttpTextGenerator(std::string endpoint,
                                                     std::shared_ptr<HttpTransport> transport) {
  return std::make_unique<HttpTextGenerator>(std::move(endpoint), std::move(transport));
}

}  // namespace litpipe::infra

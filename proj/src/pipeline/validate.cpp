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

#include "pipeline/validate.hpp"

#include <fstream>

#include <fmt/format.h>

#include "clustering/select_k.hpp"
#include "common/clock.hpp"
#include "common/error.hpp"
#include "common/files.hpp"
#include "infra/http.hpp"

namespace litpipe::pipeline {
namespace {

class Collector {
 public:
  explicit Collector(ValidationResult& out) : out_(out) {}
  void Add(Severity severity, std::string code, std::string message) {
    out_.diagnostics.push_back({severity, std::move(code), std::move(message)});
  }

 private:
  ValidationResult& out_;
};

void CheckWritableDir(const std::filesystem::path& dir, const std::string& what, Collector& c) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) {
    c.Add(Severity::kFatal, what + "_not_writable",
          fmt::format("cannot create {} {}: {}", what, dir.string(), ec.message()));
    return;
  }
  auto probe = dir / ".litpipe-write-probe";
  {
    std::ofstream out(probe, std::ios::binary | std::ios::trunc);
    out << "probe";
    if (!out) {
      c.Add(Severity::kFatal, what + "_not_writable",
            fmt::format("{} {} is not writable", what, dir.string()));
      return;
    }
  }
  std::filesystem::remove(probe, ec);
}

// Any HTTP response counts as reachable; transport failures do not.
bool Reachable(infra::HttpTransport& transport, const std::string& url, int* status,
               std::string* error) {
  try {
    infra::HttpRequest req;
    req.url = url;
    auto resp = transport.Send(req);
    *status = resp.status;
    return resp.status > 0;
  } catch (const std::exception& e) {
    *error = e.what();
    return false;
  }
}

}  // namespace

std::string_view SeverityName(Severity severity) {
  switch (severity) {
    case Severity::kInfo:
      return "info";
    case Severity::kWarning:
      return "warning";
    case Severity::kFatal:
      return "fatal";
  }
  return "info";
}

bool ValidationResult::fatal() const {
  for (const auto& d : diagnostics) {
    if (d.severity == Severity::kFatal) return true;
  }
  return false;
}

ValidationResult Validate(const PipelineConfig& config, const ValidateOptions& options) {
  ValidationResult result;
  Collector c(result);
  const auto& acq = config.acquisition;

  if (config.topic.find_first_not_of(" \t\r\n") == std::string::npos) {
    c.Add(Severity::kFatal, "topic_missing", "a research topic is required");
  }

  int run_year = 0;
  try {
    run_year = ToCivil(ParseUtc(ResolveTimestamp(config.timestamp))).year;
  } catch (const Error& e) {
    c.Add(Severity::kFatal, "timestamp_invalid", e.what());
  }
  if (run_year > 0) {
    int year_max = acq.year_max.value_or(run_year);
    if (acq.year_min > year_max) {
      c.Add(Severity::kFatal, "year_range_empty",
            fmt::format("year range [{}, {}] is empty", acq.year_min, year_max));
    } else if (year_max > run_year) {
      c.Add(Severity::kWarning, "year_range_future",
            fmt::format("year ceiling {} is after the run year {}", year_max, run_year));
    }
    if (acq.year_min < 1900) {
      c.Add(Severity::kWarning, "year_range_wide",
            fmt::format("year floor {} predates indexed literature", acq.year_min));
    }
  }
  if (acq.title_similarity_threshold <= 0.0 || acq.title_similarity_threshold > 1.0) {
    c.Add(Severity::kFatal, "similarity_threshold_invalid",
          fmt::format("title similarity threshold {} is outside (0, 1]",
                      acq.title_similarity_threshold));
  }

  if (config.k_min < 2) {
    c.Add(Severity::kFatal, "k_range_invalid",
          fmt::format("k-min {} is below 2", config.k_min));
  } else if (config.k_min > config.k_max) {
    c.Add(Severity::kFatal, "k_range_invalid",
          fmt::format("k-min {} exceeds k-max {}", config.k_min, config.k_max));
  } else if (acq.target_paper_count < 3) {
    c.Add(Severity::kFatal, "corpus_too_small",
          fmt::format("max-papers {} leaves too few papers to cluster", acq.target_paper_count));
  } else {
    auto range = clustering::EffectiveKRange(config.k_min, config.k_max,
                                             acq.target_paper_count);
    if (range.lo != config.k_min || range.hi != config.k_max) {
      c.Add(Severity::kWarning, "k_range_clamped",
            fmt::format("k range [{}, {}] will be clamped to [{}, {}] for at most {} papers",
                        config.k_min, config.k_max, range.lo, range.hi,
                        acq.target_paper_count));
    }
  }

  if (!(config.coverage_min >= 0.0 && config.coverage_min <= config.coverage_target &&
        config.coverage_target <= 1.0)) {
    c.Add(Severity::kFatal, "coverage_invalid",
          fmt::format("coverage bounds must satisfy 0 <= min <= target <= 1 (min {}, target {})",
                      config.coverage_min, config.coverage_target));
  }
  if (config.word_budget == 0) {
    c.Add(Severity::kFatal, "word_budget_invalid", "word budget must be positive");
  } else if (config.word_budget < 2000) {
    c.Add(Severity::kWarning, "word_budget_small",
          fmt::format("word budget {} leaves little room beyond the framing sections",
                      config.word_budget));
  }

  if (config.out_dir.empty()) {
    c.Add(Severity::kFatal, "output_dir_missing", "an output directory is required");
  } else {
    CheckWritableDir(config.out_dir, "output_dir", c);
    if (config.cache_dir) CheckWritableDir(*config.cache_dir, "cache_dir", c);
  }

  const auto& p = config.providers;
  if (p.search_fixture) {
    try {
      auto j = nlohmann::json::parse(files::ReadFile(*p.search_fixture));
      if (!j.is_object() || (!j.contains("semantic_scholar") && !j.contains("arxiv"))) {
        c.Add(Severity::kFatal, "fixture_invalid",
              "search fixture needs a semantic_scholar or arxiv record list");
      }
    } catch (const std::exception& e) {
      c.Add(Severity::kFatal, "fixture_invalid",
            fmt::format("cannot load search fixture {}: {}", p.search_fixture->string(), e.what()));
    }
  }
  if (p.embedding == EmbeddingChoice::kSidecar && !config.endpoints.embedding) {
    c.Add(Severity::kFatal, "endpoint_missing",
          "embedding=sidecar needs LITPIPE_EMBED_ENDPOINT or --embed-endpoint");
  }
  bool external_text = p.generation == GenerationChoice::kExternal ||
                       p.judge == GenerationChoice::kExternal;
  if (external_text && !config.endpoints.generation) {
    c.Add(Severity::kFatal, "endpoint_missing",
          "external generation or judge needs LITPIPE_GEN_ENDPOINT or --gen-endpoint");
  }

  if (p.AllOffline()) {
    c.Add(Severity::kInfo, "network_checks_skipped", "all providers are offline");
    return result;
  }
  if (!options.check_network) return result;

  auto transport = options.transport;
  if (!transport) transport = infra::MakeHttplibTransport(10.0);
  auto probe = [&](const std::string& url, const std::string& name, Severity on_failure) {
    ++result.network_checks;
    int status = 0;
    std::string error;
    if (Reachable(*transport, url, &status, &error)) {
      c.Add(Severity::kInfo, "provider_reachable", fmt::format("{} answered ({})", name, status));
    } else {
      c.Add(on_failure, "provider_unreachable",
            fmt::format("{} at {} is unreachable: {}", name, url, error));
    }
  };
  if (!p.search_fixture) {
    probe("https://api.semanticscholar.org/graph/v1/paper/search?query=survey&limit=1",
          "semantic_scholar", Severity::kWarning);
    probe("http://export.arxiv.org/api/query?search_query=all:survey&max_results=1", "arxiv",
          Severity::kWarning);
  }
  if (p.embedding == EmbeddingChoice::kSidecar && config.endpoints.embedding) {
    probe(*config.endpoints.embedding + "/healthz", "embedding sidecar", Severity::kFatal);
  }
  if (external_text && config.endpoints.generation) {
    probe(*config.endpoints.generation, "generation endpoint", Severity::kFatal);
  }
  return result;
}

nlohmann::ordered_json ValidationToJson(const ValidationResult& result) {
  nlohmann::ordered_json j;
  j["fatal"] = result.fatal();
  j["network_checks"] = result.network_checks;
  auto& list = j["diagnostics"] = nlohmann::ordered_json::array();
  for (const auto& d : result.diagnostics) {
    list.push_back({{"severity", SeverityName(d.severity)}, {"code", d.code},
                    {"message", d.message}});
  }
  return j;
}

}  // namespace litpipe::pipeline

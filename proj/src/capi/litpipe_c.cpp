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

#include "litpipe/litpipe.h"

#include <array>
#include <cmath>
#include <cstdlib>
#include <cstring>
#include <optional>
#include <string>

#include "acquisition/dedup.hpp"
#include "common/error.hpp"
#include "evaluator/rubric.hpp"
#include "pipeline/config.hpp"
#include "pipeline/run.hpp"
#include "pipeline/validate.hpp"
#include "writer/word_count.hpp"

struct litpipe_config {
  litpipe::pipeline::PipelineConfig config;
};

struct litpipe_run_result {
  int exit_code = 0;
  std::string summary_json;
  std::string error;
};

namespace {

thread_local std::string g_last_error;

litpipe_status SetError(litpipe_status status, const std::string& message) {
  g_last_error = message;
  return status;
}

litpipe_status StatusFor(const litpipe::Error& e) {
  switch (e.code()) {
    case litpipe::ErrorCode::kConfig:
      return LITPIPE_ERR_CONFIG;
    case litpipe::ErrorCode::kAggregation:
      return LITPIPE_ERR_AGGREGATION;
    case litpipe::ErrorCode::kInvalidInput:
      return LITPIPE_ERR_INVALID_ARGUMENT;
    default:
      return LITPIPE_ERR_INTERNAL;
  }
}

char* CopyString(const std::string& s) {
  auto* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out) std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

// Runs `body`, mapping exceptions to status codes and the thread's last
// error message.
template <typename Fn>
litpipe_status Guard(Fn&& body) {
  try {
    g_last_error.clear();
    return body();
  } catch (const litpipe::Error& e) {
    return SetError(StatusFor(e), e.what());
  } catch (const std::exception& e) {
    return SetError(LITPIPE_ERR_INTERNAL, e.what());
  } catch (...) {
    return SetError(LITPIPE_ERR_INTERNAL, "unknown error");
  }
}

}  // namespace

extern "C" {

const char* litpipe_version(void) { return LITPIPE_VERSION; }

const char* litpipe_last_error(void) { return g_last_error.c_str(); }

void litpipe_string_free(char* s) { std::free(s); }

litpipe_status litpipe_config_create(litpipe_config** out) {
  if (!out) return SetError(LITPIPE_ERR_INVALID_ARGUMENT, "null output pointer");
  return Guard([&] {
    auto* config = new litpipe_config();
    config->config.endpoints = litpipe::pipeline::EndpointsFromEnvironment();
    *out = config;
    return LITPIPE_OK;
  });
}

void litpipe_config_destroy(litpipe_config* config) { delete config; }

litpipe_status litpipe_config_set(litpipe_config* config, const char* key, const char* value) {
  if (!config || !key || !value) return SetError(LITPIPE_ERR_INVALID_ARGUMENT, "null argument");
  return Guard([&] {
    litpipe::pipeline::SetOption(config->config, key, value);
    return LITPIPE_OK;
  });
}

litpipe_status litpipe_config_validate(const litpipe_config* config, char** diagnostics_json,
                                       int* fatal) {
  if (!config || !diagnostics_json || !fatal) {
    return SetError(LITPIPE_ERR_INVALID_ARGUMENT, "null argument");
  }
  return Guard([&] {
    auto result = litpipe::pipeline::Validate(config->config);
    *fatal = result.fatal() ? 1 : 0;
    *diagnostics_json = CopyString(litpipe::pipeline::ValidationToJson(result).dump(2));
    return LITPIPE_OK;
  });
}

litpipe_status litpipe_run(const litpipe_config* config, litpipe_run_result** out) {
  if (!config || !out) return SetError(LITPIPE_ERR_INVALID_ARGUMENT, "null argument");
  return Guard([&] {
    auto run = litpipe::pipeline::Run(config->config);
    auto* result = new litpipe_run_result();
    result->exit_code = run.exit_code;
    result->summary_json = std::move(run.summary_json);
    result->error = std::move(run.error);
    *out = result;
    return LITPIPE_OK;
  });
}

int litpipe_run_result_exit_code(const litpipe_run_result* result) {
  return result ? result->exit_code : litpipe::pipeline::kExitConfigError;
}

const char* litpipe_run_result_summary_json(const litpipe_run_result* result) {
  return result ? result->summary_json.c_str() : "";
}

const char* litpipe_run_result_error(const litpipe_run_result* result) {
  return result ? result->error.c_str() : "";
}

void litpipe_run_result_destroy(litpipe_run_result* result) { delete result; }

litpipe_status litpipe_title_similarity(const char* a, const char* b, double* out) {
  if (!a || !b || !out) return SetError(LITPIPE_ERR_INVALID_ARGUMENT, "null argument");
  return Guard([&] {
    *out = litpipe::acquisition::TitleSimilarity(a, b);
    return LITPIPE_OK;
  });
}

litpipe_status litpipe_aggregate_scores(const double scores[12], double* core, double* writing,
                                        double* depth, double* overall) {
  if (!scores || !core || !writing || !depth || !overall) {
    return SetError(LITPIPE_ERR_INVALID_ARGUMENT, "null argument");
  }
  return Guard([&] {
    std::array<std::optional<double>, litpipe::evaluator::kDimensionCount> in;
    for (std::size_t i = 0; i < in.size(); ++i) {
      if (!std::isnan(scores[i])) in[i] = scores[i];
    }
    auto c = litpipe::evaluator::Aggregate(in);
    *core = c.core;
    *writing = c.writing;
    *depth = c.depth;
    *overall = c.overall;
    return LITPIPE_OK;
  });
}

litpipe_status litpipe_word_count(const char* markdown, size_t* out) {
  if (!markdown || !out) return SetError(LITPIPE_ERR_INVALID_ARGUMENT, "null argument");
  return Guard([&] {
    *out = litpipe::writer::WordCount(markdown);
    return LITPIPE_OK;
  });
}

}  // extern "C"

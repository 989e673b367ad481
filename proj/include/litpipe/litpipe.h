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

#ifndef LITPIPE_LITPIPE_H_
#define LITPIPE_LITPIPE_H_

#include <stddef.h>

#if defined(_WIN32)
#define LITPIPE_API __declspec(dllexport)
#else
#define LITPIPE_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum litpipe_status {
  LITPIPE_OK = 0,
  LITPIPE_ERR_INVALID_ARGUMENT = 1,
  LITPIPE_ERR_CONFIG = 2,
  LITPIPE_ERR_STAGE_FAILURE = 3,
  LITPIPE_ERR_AGGREGATION = 4,
  LITPIPE_ERR_INTERNAL = 5,
} litpipe_status;

typedef struct litpipe_config litpipe_config;
typedef struct litpipe_run_result litpipe_run_result;

// Library version, e.g. "0.3.0". Static storage.
LITPIPE_API const char* litpipe_version(void);

// Message for the last failing call on this thread; "" if none. Valid until
// the next call on the same thread.
LITPIPE_API const char* litpipe_last_error(void);

// Strings returned through char** out-parameters are owned by the caller.
LITPIPE_API void litpipe_string_free(char* s);

// A config starts with defaults and endpoints read from the environment.
LITPIPE_API litpipe_status litpipe_config_create(litpipe_config** out);
LITPIPE_API void litpipe_config_destroy(litpipe_config* config);

// Keys: topic, out, seed, max-papers, year-min, year-max, min-citations,
// similarity-threshold, k-min, k-max, word-budget, coverage-min,
// coverage-target, providers, fixture, stages, cache-dir, timestamp,
// concurrency, gen-endpoint, embed-endpoint, embed-model, s2-api-key.
LITPIPE_API litpipe_status litpipe_config_set(litpipe_config* config, const char* key,
                                              const char* value);

// Diagnostics as JSON in *diagnostics_json. *fatal is set to 1 when the
// config cannot run. Probes the network only for non-mock providers.
LITPIPE_API litpipe_status litpipe_config_validate(const litpipe_config* config,
                                                   char** diagnostics_json, int* fatal);

// Runs the pipeline. Returns LITPIPE_OK whenever a result was produced;
// the pipeline outcome is in litpipe_run_result_exit_code.
LITPIPE_API litpipe_status litpipe_run(const litpipe_config* config, litpipe_run_result** out);

// 0 success, 2 config error, 3 stage failure.
LITPIPE_API int litpipe_run_result_exit_code(const litpipe_run_result* result);
// run_summary.json contents, or "" when the run stopped at validation.
LITPIPE_API const char* litpipe_run_result_summary_json(const litpipe_run_result* result);
// Error text for a failed run; "" on success.
LITPIPE_API const char* litpipe_run_result_error(const litpipe_run_result* result);
LITPIPE_API void litpipe_run_result_destroy(litpipe_run_result* result);

// Normalized title similarity in [0, 1] used for deduplication.
LITPIPE_API litpipe_status litpipe_title_similarity(const char* a, const char* b, double* out);

// Twelve rubric scores in rubric order to the category means and the
// weighted overall score. NaN marks a missing score and fails with
// LITPIPE_ERR_AGGREGATION.
LITPIPE_API litpipe_status litpipe_aggregate_scores(const double scores[12], double* core,
                                                    double* writing, double* depth,
                                                    double* overall);

// Words in a Markdown document, excluding markup and citation keys.
LITPIPE_API litpipe_status litpipe_word_count(const char* markdown, size_t* out);

#ifdef __cplusplus
}  // extern "C"
#endif

#endif  // LITPIPE_LITPIPE_H_

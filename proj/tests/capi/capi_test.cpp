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

// Exercises the C API through the shared library only.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>
#include <stdlib.h>

#include <cmath>
#include <filesystem>
#include <string>

#include "litpipe/litpipe.h"

namespace {

struct Config {
  Config() { REQUIRE(litpipe_config_create(&handle) == LITPIPE_OK); }
  ~Config() { litpipe_config_destroy(handle); }
  litpipe_config* handle = nullptr;
};

std::string TempDir() {
  std::string pattern = (std::filesystem::temp_directory_path() / "litpipe-capi-XXXXXX").string();
  REQUIRE(::mkdtemp(pattern.data()) != nullptr);
  return pattern;
}

}  // namespace

TEST_CASE("version is non-empty") { CHECK(std::string(litpipe_version()).size() > 0); }

TEST_CASE("null arguments are rejected with a message") {
  CHECK(litpipe_config_create(nullptr) == LITPIPE_ERR_INVALID_ARGUMENT);
  CHECK(std::string(litpipe_last_error()) == "null output pointer");
  double s = 0;
  CHECK(litpipe_title_similarity(nullptr, "a", &s) == LITPIPE_ERR_INVALID_ARGUMENT);
  CHECK(litpipe_run_result_exit_code(nullptr) == 2);
}

TEST_CASE("unknown config key is a config error") {
  Config c;
  CHECK(litpipe_config_set(c.handle, "no-such-key", "1") == LITPIPE_ERR_CONFIG);
  CHECK(std::string(litpipe_last_error()).find("no-such-key") != std::string::npos);
  CHECK(litpipe_config_set(c.handle, "seed", "7") == LITPIPE_OK);
  CHECK(std::string(litpipe_last_error()).empty());
}

TEST_CASE("title similarity") {
  double s = 0;
  REQUIRE(litpipe_title_similarity("abc", "abd", &s) == LITPIPE_OK);
  CHECK(s == doctest::Approx(2.0 / 3.0));
  REQUIRE(litpipe_title_similarity("alpha", "zzzzz", &s) == LITPIPE_OK);
  CHECK(s == 0.0);
}

TEST_CASE("aggregate scores") {
  const double scores[12] = {8, 8, 8, 8, 8, 8, 9, 9, 9, 7, 7, 7};
  double core = 0, writing = 0, depth = 0, overall = 0;
  REQUIRE(litpipe_aggregate_scores(scores, &core, &writing, &depth, &overall) == LITPIPE_OK);
  CHECK(core == doctest::Approx(8.0));
  CHECK(overall == doctest::Approx(0.6 * core + 0.2 * writing + 0.2 * depth));
  const double bad[12] = {8, 8, 8, 8, 8, 8, 9, 9, 9, 7, 7, NAN};
  CHECK(litpipe_aggregate_scores(bad, &core, &writing, &depth, &overall) != LITPIPE_OK);
}

TEST_CASE("word count") {
  size_t n = 0;
  REQUIRE(litpipe_word_count("# Title\n\nAgents plan [Smith et al., 2023].", &n) == LITPIPE_OK);
  CHECK(n == 3);
}

TEST_CASE("validate reports fatal config") {
  Config c;
  char* json = nullptr;
  int fatal = 0;
  REQUIRE(litpipe_config_validate(c.handle, &json, &fatal) == LITPIPE_OK);
  CHECK(fatal == 1);
  CHECK(std::string(json).find("topic") != std::string::npos);
  litpipe_string_free(json);
}

TEST_CASE("offline run through the C API") {
  std::string out = TempDir();
  Config c;
  REQUIRE(litpipe_config_set(c.handle, "topic", "LLM agents") == LITPIPE_OK);
  REQUIRE(litpipe_config_set(c.handle, "out", out.c_str()) == LITPIPE_OK);
  REQUIRE(litpipe_config_set(c.handle, "max-papers", "40") == LITPIPE_OK);
  REQUIRE(litpipe_config_set(c.handle, "timestamp", "2026-01-15T00:00:00Z") == LITPIPE_OK);
  std::string fixture = std::string(LITPIPE_FIXTURE_DIR) + "/corpus40.json";
  REQUIRE(litpipe_config_set(c.handle, "fixture", fixture.c_str()) == LITPIPE_OK);
  REQUIRE(litpipe_config_set(c.handle, "providers", "mock") == LITPIPE_OK);

  litpipe_run_result* result = nullptr;
  REQUIRE(litpipe_run(c.handle, &result) == LITPIPE_OK);
  CHECK(litpipe_run_result_exit_code(result) == 0);
  CHECK(std::string(litpipe_run_result_error(result)).empty());
  std::string summary = litpipe_run_result_summary_json(result);
  CHECK(summary.find("\"status\": \"success\"") != std::string::npos);
  litpipe_run_result_destroy(result);
  CHECK(std::filesystem::exists(std::filesystem::path(out) / "survey.md"));
  std::filesystem::remove_all(out);
}

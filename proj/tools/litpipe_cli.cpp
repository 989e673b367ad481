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

// litpipe: topic in, clustered corpus, survey and quality report out.

#include <cstdio>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "litpipe/litpipe.h"

namespace {

// Flag name -> C API config key. Values are passed through verbatim.
const std::vector<std::pair<std::string, std::string>> kRunFlags = {
    {"topic", "research topic"},
    {"out", "output directory"},
    {"seed", "random seed (default 42)"},
    {"max-papers", "target corpus size (default 150)"},
    {"year-min", "earliest publication year (default 2020)"},
    {"year-max", "latest publication year (default: run year)"},
    {"min-citations", "citation floor (default: adaptive)"},
    {"similarity-threshold", "title similarity for duplicates (default 0.90)"},
    {"k-min", "smallest cluster count tried (default 5)"},
    {"k-max", "largest cluster count tried (default 15)"},
    {"word-budget", "survey length target in words (default 10000)"},
    {"coverage-min", "citation coverage floor (default 0.50)"},
    {"coverage-target", "citation coverage target (default 0.80)"},
    {"providers",
     "mock, or embedding=mock|sidecar,generation=mock|external,judge=mock|external,"
     "search=live|fixture:<path>"},
    {"fixture", "offline search fixture (same as search=fixture:<path>)"},
    {"stages", "comma-separated subset of acquire,embed,cluster,write,evaluate"},
    {"cache-dir", "cache root (default <out>/cache)"},
    {"timestamp", "run timestamp YYYY-MM-DDTHH:MM:SSZ (default SOURCE_DATE_EPOCH or now)"},
    {"concurrency", "provider requests in flight (default 4)"},
    {"gen-endpoint", "text generation endpoint (default $LITPIPE_GEN_ENDPOINT)"},
    {"embed-endpoint", "embedding sidecar endpoint (default $LITPIPE_EMBED_ENDPOINT)"},
    {"embed-model", "embedding model served by the sidecar (default all-MiniLM-L6-v2)"},
};

class ConfigHandle {
 public:
  ConfigHandle() {
    if (litpipe_config_create(&config_) != LITPIPE_OK) config_ = nullptr;
  }
  ~ConfigHandle() { litpipe_config_destroy(config_); }
  ConfigHandle(const ConfigHandle&) = delete;
  ConfigHandle& operator=(const ConfigHandle&) = delete;

  litpipe_config* get() const { return config_; }

 private:
  litpipe_config* config_ = nullptr;
};

void AddConfigFlags(CLI::App* app, std::map<std::string, std::string>& values) {
  for (const auto& [name, help] : kRunFlags) {
    app->add_option("--" + name, values[name], help);
  }
}

// Applies the flags the user actually gave. Returns false (after printing
// the reason) on a bad value.
bool ApplyFlags(CLI::App* app, const std::map<std::string, std::string>& values,
                litpipe_config* config) {
  for (const auto& [name, value] : values) {
    if (app->count("--" + name) == 0) continue;
    if (litpipe_config_set(config, name.c_str(), value.c_str()) != LITPIPE_OK) {
      std::cerr << "litpipe: " << litpipe_last_error() << "\n";
      return false;
    }
  }
  return true;
}

void PrintDiagnostics(const nlohmann::json& diagnostics, std::ostream& os) {
  for (const auto& d : diagnostics.at("diagnostics")) {
    os << d.at("severity").get<std::string>() << ": " << d.at("message").get<std::string>()
       << " [" << d.at("code").get<std::string>() << "]\n";
  }
}

int Validate(CLI::App* app, const std::map<std::string, std::string>& values, bool as_json) {
  ConfigHandle config;
  if (!config.get() || !ApplyFlags(app, values, config.get())) return 2;
  char* out = nullptr;
  int fatal = 0;
  if (litpipe_config_validate(config.get(), &out, &fatal) != LITPIPE_OK) {
    std::cerr << "litpipe: " << litpipe_last_error() << "\n";
    return 2;
  }
  std::string text(out);
  litpipe_string_free(out);
  if (as_json) {
    std::cout << text << "\n";
  } else {
    auto j = nlohmann::json::parse(text);
    PrintDiagnostics(j, std::cout);
    std::cout << "network checks: " << j.at("network_checks").get<int>() << "\n";
    std::cout << (fatal ? "config invalid\n" : "config ok\n");
  }
  return fatal ? 2 : 0;
}

int Run(CLI::App* app, const std::map<std::string, std::string>& values, bool as_json) {
  ConfigHandle config;
  if (!config.get() || !ApplyFlags(app, values, config.get())) return 2;
  litpipe_run_result* result = nullptr;
  if (litpipe_run(config.get(), &result) != LITPIPE_OK) {
    std::cerr << "litpipe: " << litpipe_last_error() << "\n";
    return 2;
  }
  int code = litpipe_run_result_exit_code(result);
  std::string summary = litpipe_run_result_summary_json(result);
  std::string error = litpipe_run_result_error(result);
  litpipe_run_result_destroy(result);

  if (as_json && !summary.empty()) {
    std::cout << summary;
  } else if (!summary.empty()) {
    auto j = nlohmann::json::parse(summary);
    for (const auto& s : j.at("stages")) {
      std::printf("%-9s %-10s %10.1f ms\n", s.at("name").get<std::string>().c_str(),
                  s.at("status").get<std::string>().c_str(), s.at("duration_ms").get<double>());
    }
    for (const auto& flag : j.at("degraded_flags")) {
      std::printf("degraded: %s\n", flag.get<std::string>().c_str());
    }
  }
  if (!error.empty()) std::cerr << "litpipe: " << error << "\n";
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Literature survey pipeline: search, cluster, write, evaluate."};
  app.require_subcommand(1);

  std::map<std::string, std::string> run_values;
  bool run_json = false;
  auto* run = app.add_subcommand("run", "run the pipeline (resumes from run_state.json)");
  AddConfigFlags(run, run_values);
  run->add_flag("--json", run_json, "print run_summary.json instead of a stage table");

  std::map<std::string, std::string> validate_values;
  bool validate_json = false;
  auto* validate = app.add_subcommand("validate", "check a configuration without running it");
  AddConfigFlags(validate, validate_values);
  validate->add_flag("--json", validate_json, "print diagnostics as JSON");

  app.add_subcommand("version", "print the library version");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  if (*run) return Run(run, run_values, run_json);
  if (*validate) return Validate(validate, validate_values, validate_json);
  std::cout << "litpipe " << litpipe_version() << "\n";
  return 0;
}

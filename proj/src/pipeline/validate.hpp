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

#include <memory>
#include <string>
#include <vector>

#include <json.hpp>

#include "pipeline/config.hpp"

namespace litpipe::infra {
class HttpTransport;
}

namespace litpipe::pipeline {

enum class Severity { kInfo, kWarning, kFatal };

std::string_view SeverityName(Severity severity);

struct Diagnostic {
  Severity severity = Severity::kInfo;
  std::string code;
  std::string message;
};

struct ValidationResult {
  std::vector<Diagnostic> diagnostics;
  // Reachability probes actually sent; zero for offline providers.
  int network_checks = 0;

  bool fatal() const;
};

struct ValidateOptions {
  // Probe non-mock providers over the network.
  bool check_network = true;
  // Used for probes; a default transport is created when null.
  std::shared_ptr<infra::HttpTransport> transport;
};

// Never throws for a bad config; every problem becomes a diagnostic.
ValidationResult Validate(const PipelineConfig& config, const ValidateOptions& options = {});

nlohmann::ordered_json ValidationToJson(const ValidationResult& result);

}  // namespace litpipe::pipeline

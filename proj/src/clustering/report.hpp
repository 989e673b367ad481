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

#include <string>
#include <vector>

#include <json.hpp>

#include "acquisition/types.hpp"
#include "clustering/cluster.hpp"

namespace litpipe::clustering {

inline constexpr int kClustersSchema = 1;

// clustering_report.md. `generated_at` is printed verbatim. Throws
// Error(kInternalConsistency) if the result and corpus disagree.
std::string RenderClusterReport(const ClusteringResult& result,
                                const std::vector<acquisition::Paper>& papers,
                                const std::string& generated_at);

// clusters.json. Non-finite numbers are written as the strings
// "Infinity", "-Infinity" and "NaN".
nlohmann::ordered_json ClusteringToJson(const ClusteringResult& result);
ClusteringResult ClusteringFromJson(const nlohmann::json& j);

nlohmann::ordered_json NumberJson(double v);
double NumberFromJson(const nlohmann::json& j);

}  // namespace litpipe::clustering

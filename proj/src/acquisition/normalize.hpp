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

#include <optional>
#include <string>

#include <json.hpp>

#include "acquisition/types.hpp"

namespace litpipe::acquisition {

struct NormalizeResult {
  std::optional<Paper> paper;
  // "no-title" or "no-year" when rejected.
  std::string rejection;
};

// Maps one raw record onto the canonical Paper: whitespace-collapsed title
// and abstract, year from the year field or the leading digits of a
// publication date, citation_count 0 when the source omits it.
NormalizeResult NormalizeRecord(const nlohmann::json& raw, Source source);

}  // namespace litpipe::acquisition

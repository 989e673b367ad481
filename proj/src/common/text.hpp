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
#include <string_view>
#include <vector>

namespace litpipe::text {

std::string Trim(std::string_view s);
std::string CollapseWhitespace(std::string_view s);
std::string ToLower(std::string_view s);

// Case-folded, punctuation replaced by spaces, whitespace collapsed.
// Bytes >= 0x80 are kept so non-ASCII titles still compare.
std::string NormalizeForMatch(std::string_view s);

// Lower-cased alphanumeric runs. Hyphens and other punctuation split words.
std::vector<std::string> Words(std::string_view s);

std::vector<std::string> SplitWhitespace(std::string_view s);

bool IsStopword(std::string_view word);

// "large language" -> "Large Language"
std::string TitleCase(std::string_view s);

std::string Join(const std::vector<std::string>& parts, std::string_view sep);

bool StartsWith(std::string_view s, std::string_view prefix);

}  // namespace litpipe::text

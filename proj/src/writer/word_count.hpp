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

#include <cstddef>
#include <string>

namespace litpipe::writer {

// Words after removing HTML comments, citation brackets and Markdown
// markup (heading hashes, list markers, emphasis, code ticks, link URLs,
// table pipes). A word is a whitespace-delimited token with at least one
// letter or digit.
std::size_t WordCount(const std::string& markdown);

// The text WordCount actually counts over.
std::string StripForCounting(const std::string& markdown);

}  // namespace litpipe::writer

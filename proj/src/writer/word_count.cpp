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

#include "writer/word_count.hpp"

#include <cctype>
#include <regex>
#include <sstream>

#include "common/text.hpp"
#include "writer/citations.hpp"

namespace litpipe::writer {

std::string StripForCounting(const std::string& markdown) {
  std::string s;
  // HTML comments.
  for (std::size_t pos = 0;;) {
    auto open = markdown.find("<!--", pos);
    s += markdown.substr(pos, open == std::string::npos ? open : open - pos);
    if (open == std::string::npos) break;
    auto close = markdown.find("-->", open + 4);
    if (close == std::string::npos) break;
    pos = close + 3;
  }
  // Citation brackets, back to front so offsets stay valid.
  auto cites = FindCitations(s);
  std::size_t last = std::string::npos;
  for (auto it = cites.rbegin(); it != cites.rend(); ++it) {
    if (it->offset == last) continue;
    last = it->offset;
    auto close = s.find(']', it->offset);
    s.replace(it->offset, close - it->offset + 1, " ");
  }
  static const std::regex kLink(R"(\[([^\]]*)\]\([^)]*\))");
  s = std::regex_replace(s, kLink, "$1");

  std::istringstream in(s);
  std::string line, out;
  static const std::regex kLead(R"(^\s*(#{1,6}\s+|[-*+]\s+|\d+[.)]\s+|>\s*)+)");
  while (std::getline(in, line)) {
    line = std::regex_replace(line, kLead, "");
    for (char& c : line) {
      if (c == '*' || c == '_' || c == '`' || c == '|') c = ' ';
    }
    out += line;
    out += '\n';
  }
  return out;
}

std::size_t WordCount(const std::string& markdown) {
  std::size_t n = 0;
  for (const auto& tok : text::SplitWhitespace(StripForCounting(markdown))) {
    for (unsigned char c : tok) {
      if (std::isalnum(c) || c >= 0x80) {
        ++n;
        break;
      }
    }
  }
  return n;
}

}  // namespace litpipe::writer

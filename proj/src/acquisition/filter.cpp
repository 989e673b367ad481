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

#include "acquisition/filter.hpp"

namespace litpipe::acquisition {

std::size_t CodePointCount(std::string_view s) {
  std::size_t n = 0;
  for (unsigned char c : s) n += (c & 0xC0) != 0x80;
  return n;
}

int EffectiveYearMax(const AcquisitionConfig& config, CivilDate today) {
  return config.year_max.value_or(today.year);
}

std::int64_t MinCitationsFor(const Paper& paper, const AcquisitionConfig& config,
                             CivilDate today) {
  if (config.min_citations) return *config.min_citations;
  long age_months = (static_cast<long>(today.year) - paper.year) * 12 +
                    (static_cast<long>(today.month) - 12);
  return age_months <= config.recent_months ? 0 : 1;
}

FilterResult FilterCorpus(const std::vector<Paper>& papers, const AcquisitionConfig& config,
                          CivilDate today) {
  FilterResult out;
  const int year_max = EffectiveYearMax(config, today);
  for (const auto& p : papers) {
    if (p.year < config.year_min || p.year > year_max) {
      ++out.rejections.year;
    } else if (CodePointCount(p.abstract) < config.min_abstract_chars || p.abstract.empty()) {
      ++out.rejections.abstract;
    } else if (p.citation_count < MinCitationsFor(p, config, today)) {
      ++out.rejections.citations;
    } else {
      out.kept.push_back(p);
    }
  }
  return out;
}

}  // namespace litpipe::acquisition

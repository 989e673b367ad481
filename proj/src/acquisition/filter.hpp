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
#include <vector>

#include "acquisition/types.hpp"
#include "common/clock.hpp"

namespace litpipe::acquisition {

struct FilterRejections {
  std::size_t year = 0;
  std::size_t abstract = 0;
  std::size_t citations = 0;

  bool operator==(const FilterRejections&) const = default;
};

struct FilterResult {
  std::vector<Paper> kept;
  // Each rejected paper is counted once, under the first rule it fails
  // (checked in the order year, abstract, citations).
  FilterRejections rejections;
};

// Minimum citation count applied to `paper`: the configured override, or 0
// for papers at most recent_months old and 1 otherwise. Age is measured from
// the end of the publication year, so it never overstates how old a paper is.
std::int64_t MinCitationsFor(const Paper& paper, const AcquisitionConfig& config, CivilDate today);

int EffectiveYearMax(const AcquisitionConfig& config, CivilDate today);

// Keeps papers with year in [year_min, year_max], an abstract of at least
// min_abstract_chars code points, and enough citations. Order preserved.
FilterResult FilterCorpus(const std::vector<Paper>& papers, const AcquisitionConfig& config,
                          CivilDate today);

std::size_t CodePointCount(std::string_view s);

}  // namespace litpipe::acquisition

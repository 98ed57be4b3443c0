/*
 * Copyright 2026 The Aruba Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *      http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <array>
#include <string>

#include "aruba/dataset.hpp"
#include "aruba/error.hpp"

namespace aruba {

/// Default small/medium/large area cutoffs. These follow the common
/// 32^2 / 96^2 pixel-area convention; they are a configuration default, not
/// a property of the data.
inline constexpr double kDefaultSmallMax = 32.0 * 32.0;
inline constexpr double kDefaultMediumMax = 96.0 * 96.0;

/// Partition by area into small / medium / large datasets:
/// small: area < t1, medium: t1 <= area < t2, large: area >= t2.
/// Every instance (including ignored ones) lands in exactly one subset.
inline std::array<Dataset, 3> split_by_size(const Dataset& dataset,
                                            double small_max = kDefaultSmallMax,
                                            double medium_max =
                                                kDefaultMediumMax) {
  if (!(small_max > 0.0) || !(medium_max > small_max)) {
    throw ConfigError("size thresholds must be positive and ascending");
  }
  std::array<Dataset, 3> subsets;
  const std::array<const char*, 3> band = {"small", "medium", "large"};
  for (std::size_t i = 0; i < 3; ++i) {
    subsets[i].categories = dataset.categories;
    subsets[i].source_format = dataset.source_format;
    subsets[i].provenance = dataset.provenance;
    subsets[i].provenance.push_back(std::string("split:") + band[i]);
  }
  for (const ObjectInstance& inst : dataset.instances) {
    const std::size_t band_idx =
        inst.area < small_max ? 0 : (inst.area < medium_max ? 1 : 2);
    subsets[band_idx].instances.push_back(inst);
  }
  for (Dataset& subset : subsets) subset.finalize();
  return subsets;
}

}  // namespace aruba

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

#include <algorithm>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "aruba/dataset.hpp"
#include "aruba/error.hpp"

namespace aruba {

struct ClassFrequency {
  int class_id = -1;
  std::string name;
  std::int64_t retained = 0;
  std::int64_t ignored = 0;
};

inline std::vector<ClassFrequency> class_frequencies(const Dataset& dataset) {
  std::map<int, ClassFrequency> by_class;
  for (const auto& [id, name] : dataset.categories) {
    by_class[id] = ClassFrequency{id, name, 0, 0};
  }
  for (const ObjectInstance& inst : dataset.instances) {
    auto& row = by_class[inst.class_id];
    if (inst.ignored) {
      ++row.ignored;
    } else {
      ++row.retained;
    }
  }
  std::vector<ClassFrequency> rows;
  rows.reserve(by_class.size());
  for (auto& [id, row] : by_class) rows.push_back(std::move(row));
  return rows;
}

/// Gini coefficient of a value multiset, via the sorted-rank identity
///   G = sum_i (2 i - n - 1) x_(i) / (n sum_i x_i)   (1-based ranks).
/// 0 for equal values, approaching 1 when one value holds all the mass.
inline double gini_coefficient(std::vector<double> values) {
  if (values.empty()) {
    throw DataError("gini_coefficient: empty value list");
  }
  for (double v : values) {
    if (!(v >= 0.0)) {
      throw DataError("gini_coefficient: negative value");
    }
  }
  std::sort(values.begin(), values.end());
  const auto n = static_cast<double>(values.size());
  double total = 0.0, weighted = 0.0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    total += values[i];
    weighted += (2.0 * static_cast<double>(i + 1) - n - 1.0) * values[i];
  }
  if (total == 0.0) return 0.0;
  return weighted / (n * total);
}

/// Summary statistics of the area distribution. head_tail_ratio compares
/// instance counts in the bottom and top `range_quantile` fractions of the
/// area *range*: ~1 for a flat distribution, large when small sizes dominate.
struct ImbalanceSummary {
  std::int64_t instance_count = 0;
  double min_area = 0.0;
  double max_area = 0.0;
  double mean_area = 0.0;
  double median_area = 0.0;
  double gini = 0.0;
  double range_quantile = 0.25;
  std::int64_t head_count = 0;
  std::int64_t tail_count = 0;
  double head_tail_ratio = 0.0;
};

inline ImbalanceSummary summarize_imbalance(const Dataset& dataset,
                                            double range_quantile = 0.25,
                                            bool include_ignored = false) {
  if (!(range_quantile > 0.0) || !(range_quantile <= 0.5)) {
    throw ConfigError("range quantile must lie in (0, 0.5]");
  }
  std::vector<double> areas;
  for (const ObjectInstance& inst : dataset.instances) {
    if (inst.ignored && !include_ignored) continue;
    areas.push_back(inst.area);
  }
  if (areas.empty()) {
    throw DataError("no retained instances to summarize");
  }
  std::sort(areas.begin(), areas.end());

  ImbalanceSummary s;
  s.instance_count = static_cast<std::int64_t>(areas.size());
  s.min_area = areas.front();
  s.max_area = areas.back();
  double total = 0.0;
  for (double a : areas) total += a;
  s.mean_area = total / static_cast<double>(areas.size());
  s.median_area = areas.size() % 2 == 1
                      ? areas[areas.size() / 2]
                      : (areas[areas.size() / 2 - 1] + areas[areas.size() / 2]) / 2.0;
  s.gini = gini_coefficient(areas);
  s.range_quantile = range_quantile;

  const double span = s.max_area - s.min_area;
  const double head_cut = s.min_area + range_quantile * span;
  const double tail_cut = s.max_area - range_quantile * span;
  for (double a : areas) {
    if (a <= head_cut) ++s.head_count;
    if (a >= tail_cut) ++s.tail_count;
  }
  // min and max instances always land in their bands, so both counts are >= 1.
  s.head_tail_ratio =
      static_cast<double>(s.head_count) / static_cast<double>(s.tail_count);
  return s;
}

}  // namespace aruba

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
#include <span>
#include <string>
#include <vector>

#include "aruba/dataset.hpp"
#include "aruba/error.hpp"
#include "aruba/ingest/text_util.hpp"

namespace aruba {

/// One (instance, area) entry of a class bucket.
struct SizeRecord {
  std::string instance_id;
  double area = 0.0;
};

/// Equal-width 1D histogram of a class's pixel areas. Bins are half-open
/// [edge_i, edge_{i+1}) except the last, which is closed so max(areas)
/// belongs to it.
struct ClassSizeHistogram {
  int class_id = -1;
  std::vector<double> bin_edges;                      // size() + 1, ascending
  std::vector<std::int64_t> counts;                   // size()
  std::vector<std::vector<std::string>> bin_members;  // size()

  std::size_t size() const { return counts.size(); }

  double bin_center(std::size_t i) const {
    return (bin_edges[i] + bin_edges[i + 1]) / 2.0;
  }

  std::vector<double> bin_centers() const {
    std::vector<double> centers(size());
    for (std::size_t i = 0; i < size(); ++i) centers[i] = bin_center(i);
    return centers;
  }

  /// Bin index for an area within [bin_edges.front(), bin_edges.back()].
  /// Membership is decided against the stored edges, so a value equal to an
  /// interior edge lands in the right-hand bin.
  std::size_t bin_index(double area) const {
    const std::size_t m = size();
    const double lo = bin_edges.front();
    const double hi = bin_edges.back();
    if (!(area >= lo) || !(area <= hi)) {
      throw DataError("area " + std::to_string(area) +
                      " outside histogram range [" + std::to_string(lo) +
                      ", " + std::to_string(hi) + "]");
    }
    if (area >= bin_edges[m - 1]) return m - 1;  // last bin is closed
    auto idx = static_cast<std::size_t>(
        std::clamp((area - lo) / (hi - lo) * static_cast<double>(m), 0.0,
                   static_cast<double>(m - 1)));
    while (idx + 1 < m && area >= bin_edges[idx + 1]) ++idx;
    while (idx > 0 && area < bin_edges[idx]) --idx;
    return idx;
  }
};

/// Buckets every retained instance by class. Buckets are ordered by
/// class_id and entries by instance_id (the dataset's iteration order).
inline std::map<int, std::vector<SizeRecord>> segregate_by_class(
    const Dataset& dataset, bool include_ignored = false) {
  std::map<int, std::vector<SizeRecord>> buckets;
  for (const ObjectInstance& inst : dataset.instances) {
    if (inst.ignored && !include_ignored) continue;
    buckets[inst.class_id].push_back({inst.instance_id, inst.area});
  }
  if (buckets.empty()) {
    throw DataError("dataset has no retained instances to segregate");
  }
  return buckets;
}

/// Builds the equal-width histogram over [min(areas), max(areas)].
/// When all areas coincide the histogram degenerates to the single unit-wide
/// bin centered on that value, whatever bin_count was requested.
inline ClassSizeHistogram build_histogram(int class_id,
                                          std::span<const SizeRecord> records,
                                          int bin_count) {
  if (bin_count < 1) {
    throw ConfigError("bin count must be >= 1, got " +
                      std::to_string(bin_count));
  }
  if (records.empty()) {
    throw DataError("cannot build a histogram from zero areas");
  }
  double lo = records.front().area;
  double hi = records.front().area;
  for (const SizeRecord& r : records) {
    if (!(r.area > 0.0)) {
      throw DataError("non-positive area for instance '" + r.instance_id +
                      "'");
    }
    lo = std::min(lo, r.area);
    hi = std::max(hi, r.area);
  }

  ClassSizeHistogram hist;
  hist.class_id = class_id;
  auto m = static_cast<std::size_t>(bin_count);
  if (lo == hi) {
    hist.bin_edges = {lo - 0.5, lo + 0.5};
    m = 1;
  } else {
    hist.bin_edges.resize(m + 1);
    for (std::size_t i = 0; i <= m; ++i) {
      // The i/m ratio keeps edges of a 2m-bin histogram aligned with the
      // m-bin ones.
      hist.bin_edges[i] =
          lo + (hi - lo) * (static_cast<double>(i) / static_cast<double>(m));
    }
    hist.bin_edges[0] = lo;
    hist.bin_edges[m] = hi;
    bool ascending = true;
    for (std::size_t i = 0; i < m; ++i) {
      if (!(hist.bin_edges[i] < hist.bin_edges[i + 1])) {
        ascending = false;
        break;
      }
    }
    if (!ascending) {
      // Range too narrow for the requested resolution; collapse to one bin.
      hist.bin_edges = {lo, hi};
      m = 1;
    }
  }
  hist.counts.assign(m, 0);
  hist.bin_members.assign(m, {});

  for (const SizeRecord& r : records) {
    const std::size_t idx = hist.bin_index(r.area);
    ++hist.counts[idx];
    hist.bin_members[idx].push_back(r.instance_id);
  }
  return hist;
}

/// Log-spaced variant for analysis reports: bins equal-width in ln(area),
/// edges reported in pixels^2. The weighting pipeline always bins linearly;
/// this exists only for plots of wide-range size distributions.
inline ClassSizeHistogram build_log_histogram(
    int class_id, std::span<const SizeRecord> records, int bin_count) {
  if (bin_count < 1) {
    throw ConfigError("bin count must be >= 1, got " +
                      std::to_string(bin_count));
  }
  if (records.empty()) {
    throw DataError("cannot build a histogram from zero areas");
  }
  double lo = records.front().area;
  double hi = records.front().area;
  for (const SizeRecord& r : records) {
    if (!(r.area > 0.0)) {
      throw DataError("non-positive area for instance '" + r.instance_id +
                      "'");
    }
    lo = std::min(lo, r.area);
    hi = std::max(hi, r.area);
  }

  ClassSizeHistogram hist;
  hist.class_id = class_id;
  auto m = static_cast<std::size_t>(bin_count);
  if (lo == hi) {
    hist.bin_edges = {lo - 0.5, lo + 0.5};
    m = 1;
  } else {
    const double log_lo = std::log(lo);
    const double log_hi = std::log(hi);
    hist.bin_edges.resize(m + 1);
    for (std::size_t i = 0; i <= m; ++i) {
      hist.bin_edges[i] =
          std::exp(log_lo + (log_hi - log_lo) *
                                (static_cast<double>(i) /
                                 static_cast<double>(m)));
    }
    hist.bin_edges[0] = lo;
    hist.bin_edges[m] = hi;
    bool ascending = true;
    for (std::size_t i = 0; i < m; ++i) {
      if (!(hist.bin_edges[i] < hist.bin_edges[i + 1])) {
        ascending = false;
        break;
      }
    }
    if (!ascending) {
      hist.bin_edges = {lo, hi};
      m = 1;
    }
  }
  hist.counts.assign(m, 0);
  hist.bin_members.assign(m, {});
  for (const SizeRecord& r : records) {
    const std::size_t idx = hist.bin_index(r.area);
    ++hist.counts[idx];
    hist.bin_members[idx].push_back(r.instance_id);
  }
  return hist;
}

/// Convenience overload for plain area lists (ids synthesized from indices).
inline ClassSizeHistogram build_histogram(std::span<const double> areas,
                                          int bin_count, int class_id = -1) {
  std::vector<SizeRecord> records;
  records.reserve(areas.size());
  for (std::size_t i = 0; i < areas.size(); ++i) {
    records.push_back({pad_number(static_cast<long long>(i), 7), areas[i]});
  }
  return build_histogram(class_id, records, bin_count);
}

}  // namespace aruba

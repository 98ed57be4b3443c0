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
#include <limits>
#include <map>
#include <numeric>
#include <span>
#include <string>
#include <vector>

#include "aruba/error.hpp"
#include "aruba/histogram.hpp"

namespace aruba {

/// Partition of a class's size bins into k contiguous clusters.
/// boundaries has k+1 ascending cutpoints with boundaries[0] == 0 and
/// boundaries[k] == bin count; cluster s covers bins
/// [boundaries[s], boundaries[s+1]).
struct ClusterModel {
  int class_id = -1;
  int k = 0;
  std::vector<std::size_t> boundaries;
  std::vector<double> centroids;        // weighted mean area per cluster
  std::vector<std::int64_t> raw_count;  // instances per cluster
  std::vector<double> amplified_count;  // amplified mass per cluster

  std::size_t cluster_of_bin(std::size_t bin) const {
    auto it = std::upper_bound(boundaries.begin(), boundaries.end(), bin);
    return static_cast<std::size_t>(it - boundaries.begin()) - 1;
  }
};

namespace detail {

// Interval SSE in O(1) from prefix sums. Intervals without mass are
// infeasible: every cluster must hold at least one positive-mass bin.
class IntervalCost {
 public:
  IntervalCost(std::span<const double> centers, std::span<const double> mass) {
    const std::size_t n = centers.size();
    // Shift by the weighted mean to reduce cancellation in the prefix sums.
    double total = 0.0, weighted = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      total += mass[i];
      weighted += mass[i] * centers[i];
    }
    shift_ = total > 0.0 ? weighted / total : 0.0;
    w_.assign(n + 1, 0.0);
    wc_.assign(n + 1, 0.0);
    wc2_.assign(n + 1, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
      const double c = centers[i] - shift_;
      w_[i + 1] = w_[i] + mass[i];
      wc_[i + 1] = wc_[i] + mass[i] * c;
      wc2_[i + 1] = wc2_[i] + mass[i] * c * c;
    }
  }

  // Weighted SSE of bins [l, r] around their weighted mean; +inf if the
  // interval has no mass.
  double operator()(std::size_t l, std::size_t r) const {
    const double sw = w_[r + 1] - w_[l];
    if (!(sw > 0.0)) return std::numeric_limits<double>::infinity();
    const double swc = wc_[r + 1] - wc_[l];
    const double swc2 = wc2_[r + 1] - wc2_[l];
    return std::max(0.0, swc2 - swc * swc / sw);
  }

 private:
  double shift_ = 0.0;
  std::vector<double> w_, wc_, wc2_;
};

}  // namespace detail

/// Optimal 1D weighted k-means over bin centers, weights given by the
/// amplified per-bin mass. Solved exactly by dynamic programming over
/// interval partitions, so the result is deterministic and its weighted SSE
/// is the global minimum. SSE ties between partitions break toward the
/// smaller start index of the later cluster.
inline ClusterModel cluster_sizes(std::span<const double> bin_centers,
                                  std::span<const double> amplified, int k) {
  const std::size_t n = bin_centers.size();
  if (n == 0 || amplified.size() != n) {
    throw DataError("cluster_sizes: bin centers and amplified mass must be "
                    "non-empty and of equal length");
  }
  for (std::size_t i = 1; i < n; ++i) {
    if (!(bin_centers[i - 1] < bin_centers[i])) {
      throw DataError("cluster_sizes: bin centers must be strictly ascending");
    }
  }
  std::size_t positive = 0;
  for (double a : amplified) {
    if (a < 0.0) {
      throw DataError("cluster_sizes: negative amplified mass");
    }
    if (a > 0.0) ++positive;
  }
  if (k < 1) {
    throw ConfigError("cluster count k must be >= 1, got " +
                      std::to_string(k));
  }
  const auto ku = static_cast<std::size_t>(k);
  if (ku > positive) {
    throw ConfigError("k=" + std::to_string(k) + " exceeds the " +
                      std::to_string(positive) +
                      " bins with positive amplified mass; maximum feasible "
                      "k is " +
                      std::to_string(positive));
  }

  ClusterModel model;
  model.k = k;
  model.boundaries.assign(ku + 1, 0);
  model.boundaries[ku] = n;

  if (ku == n) {
    std::iota(model.boundaries.begin(), model.boundaries.end(),
              std::size_t{0});
  } else if (ku > 1) {
    const detail::IntervalCost cost(bin_centers, amplified);
    constexpr double kInf = std::numeric_limits<double>::infinity();

    std::vector<double> prev(n), cur(n);
    for (std::size_t i = 0; i < n; ++i) prev[i] = cost(0, i);
    // arg[j][i]: start bin of the last cluster when bins 0..i are split into
    // j+1 clusters.
    std::vector<std::vector<std::uint32_t>> arg(
        ku, std::vector<std::uint32_t>(n, 0));

    for (std::size_t j = 1; j < ku; ++j) {
      std::fill(cur.begin(), cur.end(), kInf);
      for (std::size_t i = j; i < n; ++i) {
        double best = kInf;
        std::uint32_t best_t = static_cast<std::uint32_t>(i);
        // Scan the last cluster's start downward; interval cost only grows
        // as the interval widens, so once it alone exceeds the best total
        // no smaller start can win or tie.
        for (std::size_t t = i; t >= j; --t) {
          const double c = cost(t, i);
          if (c > best) break;  // also covers c == +inf once best is finite
          const double cand = prev[t - 1] + c;
          if (cand <= best) {
            best = cand;
            best_t = static_cast<std::uint32_t>(t);
          }
        }
        cur[i] = best;
        arg[j][i] = best_t;
      }
      std::swap(prev, cur);
    }

    if (!std::isfinite(prev[n - 1])) {
      throw DataError("cluster_sizes: no feasible partition found");
    }
    std::size_t i = n - 1;
    for (std::size_t j = ku - 1; j >= 1; --j) {
      const std::size_t t = arg[j][i];
      model.boundaries[j] = t;
      i = t - 1;
    }
  }

  model.centroids.assign(ku, 0.0);
  model.amplified_count.assign(ku, 0.0);
  model.raw_count.assign(ku, 0);
  for (std::size_t s = 0; s < ku; ++s) {
    double mass = 0.0, weighted = 0.0;
    for (std::size_t b = model.boundaries[s]; b < model.boundaries[s + 1];
         ++b) {
      mass += amplified[b];
      weighted += amplified[b] * bin_centers[b];
    }
    if (!(mass > 0.0)) {
      throw DataError("cluster_sizes: internal error, empty-mass cluster");
    }
    model.amplified_count[s] = mass;
    model.centroids[s] = weighted / mass;
  }
  return model;
}

/// Overload wiring the model to its histogram: fills class_id and the raw
/// per-cluster instance counts.
inline ClusterModel cluster_sizes(const ClassSizeHistogram& hist,
                                  std::span<const double> amplified, int k) {
  ClusterModel model = cluster_sizes(hist.bin_centers(), amplified, k);
  model.class_id = hist.class_id;
  for (std::size_t s = 0; s < model.boundaries.size() - 1; ++s) {
    std::int64_t count = 0;
    for (std::size_t b = model.boundaries[s]; b < model.boundaries[s + 1];
         ++b) {
      count += hist.counts[b];
    }
    model.raw_count[s] = count;
  }
  return model;
}

/// Maps every instance of the class to its cluster through its bin.
inline std::map<std::string, int> assign_instances(
    const ClassSizeHistogram& hist, const ClusterModel& model) {
  if (model.boundaries.empty() || model.boundaries.back() != hist.size()) {
    throw DataError("assign_instances: model was not built from this "
                    "histogram");
  }
  std::map<std::string, int> assignment;
  for (std::size_t b = 0; b < hist.size(); ++b) {
    const int cluster = static_cast<int>(model.cluster_of_bin(b));
    for (const std::string& id : hist.bin_members[b]) {
      assignment[id] = cluster;
    }
  }
  return assignment;
}

}  // namespace aruba

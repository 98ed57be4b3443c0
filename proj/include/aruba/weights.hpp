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

#include <cmath>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "aruba/dataset.hpp"
#include "aruba/error.hpp"
#include "aruba/pipeline.hpp"

namespace aruba {

/// Stabilized effective number of a size cluster:
///   E = (1 - beta^x) / (1 - beta)   with   x = amplified_count^(1/root).
/// Evaluated through log1p/expm1 so beta close to 1 does not cancel
/// catastrophically, and large masses stay finite (E < 1/(1-beta) always).
inline double effective_number(double amplified_count, double beta,
                               int root) {
  if (!(beta >= 0.0) || !(beta < 1.0)) {
    throw ConfigError("beta must lie in [0, 1)");
  }
  if (root < 1) {
    throw ConfigError("root must be a positive integer, got " +
                      std::to_string(root));
  }
  if (!(amplified_count >= 0.0) || !std::isfinite(amplified_count)) {
    throw ConfigError("amplified count must be a non-negative finite real");
  }
  const double x =
      root == 1 ? amplified_count : std::pow(amplified_count, 1.0 / root);
  if (x == 0.0) return 0.0;  // beta^0 == 1
  if (beta == 0.0) return 1.0;
  return -std::expm1(x * std::log1p(beta - 1.0)) / (1.0 - beta);
}

/// Cluster weight w = 1 - 1/E. An effective number below 1 (possible only
/// for sub-unit configured masses) clamps to 0; the caller records the
/// clamp. E == 0 means an empty cluster, which never receives a weight.
inline double cluster_weight(double effective) {
  if (!(effective >= 0.0) || !std::isfinite(effective)) {
    throw ConfigError("effective number must be a non-negative finite real");
  }
  if (effective == 0.0) {
    throw DataError("empty cluster (effective number 0) cannot be weighted");
  }
  if (effective < 1.0) return 0.0;
  return 1.0 - 1.0 / effective;
}

/// Per-class weights of the classic class-balanced baseline,
/// w_y = (1 - beta) / (1 - beta^count). For comparison reports only.
inline std::map<int, double> class_balanced_weights(
    const std::map<int, std::int64_t>& class_counts, double beta) {
  if (!(beta >= 0.0) || !(beta < 1.0)) {
    throw ConfigError("beta must lie in [0, 1)");
  }
  std::map<int, double> weights;
  for (const auto& [class_id, count] : class_counts) {
    if (count < 1) {
      throw DataError("class " + std::to_string(class_id) +
                      " has non-positive count");
    }
    if (beta == 0.0) {
      weights[class_id] = 1.0;
      continue;
    }
    const double denom =
        -std::expm1(static_cast<double>(count) * std::log1p(beta - 1.0));
    weights[class_id] = (1.0 - beta) / denom;
  }
  return weights;
}

struct ClusterWeightRow {
  int class_id = -1;
  int cluster = 0;
  double area_lo = 0.0;
  double area_hi = 0.0;
  std::int64_t raw_count = 0;
  double amplified_mass = 0.0;
  double effective_number = 0.0;
  double weight = 0.0;
};

struct InstanceWeight {
  int class_id = -1;
  int cluster = 0;
  double weight = 0.0;
};

struct WeightTable {
  WeightConfig config;
  std::vector<ClusterWeightRow> rows;  // ordered by (class_id, cluster)
  std::map<std::string, InstanceWeight> instances;
  std::map<int, int> k_used;
  std::map<int, std::string> categories;
  std::vector<std::string> provenance;
  std::vector<std::string> warnings;
  std::vector<std::string> notes;
};

/// End-to-end weight computation:
/// segregate -> histogram -> amplify -> cluster -> effective number -> weight,
/// per class. Deterministic given (dataset, config); jobs only parallelizes
/// the per-class work.
inline WeightTable build_weight_table(const Dataset& dataset,
                                      const WeightConfig& config,
                                      int jobs = 1) {
  config.validate();

  WeightTable table;
  table.config = config;
  table.categories = dataset.categories;
  table.provenance = dataset.provenance;
  table.notes.push_back(
      "cluster amplified mass = sum of Gaussian-amplified bin values over "
      "the cluster's bins");
  table.notes.push_back("effective number root n = " +
                        std::to_string(config.root));
  if (config.beta == 0.0) {
    table.warnings.push_back(
        "beta = 0: every cluster weight degenerates to 0");
  }

  std::map<int, ClassPipeline> pipelines = run_pipeline(dataset, config, jobs);

  for (auto& [class_id, pipe] : pipelines) {
    for (const std::string& w : pipe.warnings) table.warnings.push_back(w);
    table.k_used[class_id] = pipe.used_k;

    const auto ku = static_cast<std::size_t>(pipe.used_k);
    std::vector<double> weights(ku, 0.0);
    std::vector<double> effective(ku, 0.0);
    for (std::size_t s = 0; s < ku; ++s) {
      effective[s] = effective_number(pipe.model.amplified_count[s],
                                      config.beta, config.root);
      if (effective[s] > 0.0 && effective[s] < 1.0) {
        table.warnings.push_back(
            "class " + std::to_string(class_id) + " cluster " +
            std::to_string(s) +
            ": effective number below 1, weight clamped to 0");
      }
      weights[s] = cluster_weight(effective[s]);
    }

    if (config.normalize) {
      double mean = 0.0;
      for (double w : weights) mean += w;
      mean /= static_cast<double>(ku);
      if (mean > 0.0) {
        for (double& w : weights) w /= mean;
      } else {
        table.warnings.push_back(
            "class " + std::to_string(class_id) +
            ": mean weight is 0, normalization skipped");
      }
    }
    if (config.weight_floor > 0.0) {
      for (double& w : weights) w = std::max(w, config.weight_floor);
    }

    for (std::size_t s = 0; s < ku; ++s) {
      ClusterWeightRow row;
      row.class_id = class_id;
      row.cluster = static_cast<int>(s);
      row.area_lo = pipe.hist.bin_edges[pipe.model.boundaries[s]];
      row.area_hi = pipe.hist.bin_edges[pipe.model.boundaries[s + 1]];
      row.raw_count = pipe.model.raw_count[s];
      row.amplified_mass = pipe.model.amplified_count[s];
      row.effective_number = effective[s];
      row.weight = weights[s];
      table.rows.push_back(row);
    }

    for (const auto& [instance_id, cluster] : pipe.assignment) {
      table.instances[instance_id] =
          InstanceWeight{class_id, cluster,
                         weights[static_cast<std::size_t>(cluster)]};
    }
  }

  if (config.normalize) {
    table.notes.push_back("weights normalized to mean 1 per class");
  }
  if (config.weight_floor > 0.0) {
    table.notes.push_back("weight floor applied");
  }
  return table;
}

}  // namespace aruba

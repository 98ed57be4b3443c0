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

#include <atomic>
#include <exception>
#include <map>
#include <string>
#include <thread>
#include <vector>

#include "aruba/cluster.hpp"
#include "aruba/dataset.hpp"
#include "aruba/error.hpp"
#include "aruba/histogram.hpp"
#include "aruba/kernel.hpp"

namespace aruba {

/// Hyperparameters of the size-balanced weighting pipeline.
struct WeightConfig {
  double beta = 0.9999;
  int root = 2;        // nth root applied to the amplified mass
  int k = 50;          // size clusters per class
  int kernel_window = 11;
  double kernel_sigma = 2.0;
  int bin_count = 1000;  // histogram bins per class
  bool normalize = false;   // rescale each class's weights to mean 1
  double weight_floor = 0.0;  // 0 disables the floor
  bool include_ignored = false;

  void validate() const {
    if (!(beta >= 0.0) || !(beta < 1.0)) {
      throw ConfigError("beta must lie in [0, 1)");
    }
    if (root < 1) {
      throw ConfigError("root must be a positive integer, got " +
                        std::to_string(root));
    }
    if (k < 1) {
      throw ConfigError("k must be >= 1, got " + std::to_string(k));
    }
    if (bin_count < 1) {
      throw ConfigError("bin count must be >= 1, got " +
                        std::to_string(bin_count));
    }
    if (kernel_window < 1 || kernel_window % 2 == 0) {
      throw ConfigError("kernel window must be a positive odd integer, got " +
                        std::to_string(kernel_window));
    }
    if (!(kernel_sigma > 0.0)) {
      throw ConfigError("kernel sigma must be positive");
    }
    if (!(weight_floor >= 0.0) || !(weight_floor < 1.0)) {
      throw ConfigError("weight floor must lie in [0, 1)");
    }
  }
};

/// Intermediate artifacts of one class's run through
/// histogram -> amplification -> clustering.
struct ClassPipeline {
  int class_id = -1;
  ClassSizeHistogram hist;
  std::vector<double> amplified;
  ClusterModel model;
  std::map<std::string, int> assignment;  // instance_id -> cluster
  int requested_k = 0;
  int used_k = 0;
  std::vector<std::string> warnings;
};

inline ClassPipeline run_class_pipeline(int class_id,
                                        std::span<const SizeRecord> records,
                                        const WeightConfig& config,
                                        const GaussianKernel& kernel) {
  ClassPipeline out;
  out.class_id = class_id;
  out.requested_k = config.k;
  out.hist = build_histogram(class_id, records, config.bin_count);
  out.amplified = amplify(out.hist, kernel);

  int positive = 0;
  for (double a : out.amplified) {
    if (a > 0.0) ++positive;
  }
  out.used_k = std::min(config.k, positive);
  if (out.used_k < config.k) {
    out.warnings.push_back(
        "class " + std::to_string(class_id) + ": k reduced from " +
        std::to_string(config.k) + " to " + std::to_string(out.used_k) +
        " (only " + std::to_string(positive) +
        " bins with positive amplified mass)");
  }
  out.model = cluster_sizes(out.hist, out.amplified, out.used_k);
  out.assignment = assign_instances(out.hist, out.model);
  return out;
}

/// Runs every class through the pipeline. Classes are independent, so with
/// jobs > 1 they are processed by a small worker pool; the result map is
/// assembled in class order either way, making the output independent of the
/// job count.
inline std::map<int, ClassPipeline> run_pipeline(const Dataset& dataset,
                                                 const WeightConfig& config,
                                                 int jobs = 1) {
  config.validate();
  const GaussianKernel kernel =
      make_kernel(config.kernel_window, config.kernel_sigma);
  const auto buckets = segregate_by_class(dataset, config.include_ignored);

  std::vector<std::pair<int, const std::vector<SizeRecord>*>> work;
  work.reserve(buckets.size());
  for (const auto& [class_id, records] : buckets) {
    work.emplace_back(class_id, &records);
  }

  std::vector<ClassPipeline> results(work.size());
  std::vector<std::exception_ptr> failures(work.size());

  auto run_one = [&](std::size_t idx) {
    try {
      results[idx] = run_class_pipeline(work[idx].first, *work[idx].second,
                                        config, kernel);
    } catch (...) {
      failures[idx] = std::current_exception();
    }
  };

  const std::size_t worker_count = std::min<std::size_t>(
      jobs > 1 ? static_cast<std::size_t>(jobs) : 1, work.size());
  if (worker_count <= 1) {
    for (std::size_t i = 0; i < work.size(); ++i) run_one(i);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(worker_count);
    for (std::size_t t = 0; t < worker_count; ++t) {
      pool.emplace_back([&] {
        for (std::size_t i = next.fetch_add(1); i < work.size();
             i = next.fetch_add(1)) {
          run_one(i);
        }
      });
    }
    for (std::thread& t : pool) t.join();
  }

  // Report the failure of the lowest class id so errors do not depend on
  // scheduling.
  for (std::size_t i = 0; i < work.size(); ++i) {
    if (failures[i]) std::rethrow_exception(failures[i]);
  }

  std::map<int, ClassPipeline> out;
  for (std::size_t i = 0; i < work.size(); ++i) {
    out.emplace(work[i].first, std::move(results[i]));
  }
  return out;
}

}  // namespace aruba

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
#include "aruba/io/float_format.hpp"
#include "aruba/synthetic.hpp"
#include "aruba/weights.hpp"

namespace aruba {

// Desk-scale check that the weighted objective L_C + w * L_R behaves: a
// per-cluster affine model fit by plain gradient descent under a fixed step
// budget, so clusters whose relative weight is larger converge further.

enum class RegressionLossKind { smooth_l1, quadratic };

struct ToyOptions {
  std::uint64_t seed = 11;
  int iterations = 400;
  double learning_rate = 0.8;
  RegressionLossKind loss = RegressionLossKind::smooth_l1;
  double smooth_l1_threshold = 1.0;
  double classification_constant = 0.25;  // the constant L_C term
  double feature_noise = 0.05;            // relative to the area
  double target_noise = 0.4;
};

struct ToyInstance {
  int cluster = 0;       // task-level cluster index
  double feature = 0.0;  // standardized within the cluster
  double target = 0.0;
  double weight = 1.0;
};

struct ToyClusterInfo {
  int class_id = -1;
  int cluster = 0;  // cluster index within the class
  std::int64_t count = 0;
  double weight = 1.0;
};

struct ToyTask {
  std::vector<ToyInstance> instances;
  std::vector<ToyClusterInfo> clusters;
  ToyOptions options;
};

/// Model parameters: one (slope, intercept) pair per task cluster.
struct ToyParams {
  std::vector<double> slope;
  std::vector<double> intercept;
};

struct ToyClusterError {
  ToyClusterInfo info;
  double mean_abs_error = 0.0;
};

struct ToyReport {
  std::vector<ToyClusterError> clusters;
  std::size_t head_cluster = 0;  // most populated cluster
  std::size_t tail_cluster = 0;  // least populated cluster
  double head_error = 0.0;
  double tail_error = 0.0;
  double final_loss = 0.0;
  ToyParams params;
};

namespace detail {

inline double regression_loss(double diff, const ToyOptions& opt) {
  if (opt.loss == RegressionLossKind::quadratic) return 0.5 * diff * diff;
  const double t = opt.smooth_l1_threshold;
  const double a = std::abs(diff);
  return a <= t ? 0.5 * diff * diff / t : a - 0.5 * t;
}

inline double regression_loss_grad(double diff, const ToyOptions& opt) {
  if (opt.loss == RegressionLossKind::quadratic) return diff;
  const double t = opt.smooth_l1_threshold;
  return std::clamp(diff / t, -1.0, 1.0);
}

}  // namespace detail

/// Builds the toy regression task from a dataset and its weight table:
/// feature = area plus size-proportional noise, target = an affine function
/// of log-area plus noise, clusters and weights taken from the table. With
/// `uniform` every instance weight is 1 and the weight table only provides
/// the cluster structure.
inline ToyTask make_toy_task(const Dataset& dataset, const WeightTable& table,
                             const ToyOptions& options, bool uniform) {
  ToyTask task;
  task.options = options;

  std::map<std::pair<int, int>, int> cluster_index;
  for (const ClusterWeightRow& row : table.rows) {
    const int idx = static_cast<int>(task.clusters.size());
    cluster_index[{row.class_id, row.cluster}] = idx;
    ToyClusterInfo info;
    info.class_id = row.class_id;
    info.cluster = row.cluster;
    info.count = 0;
    info.weight = uniform ? 1.0 : row.weight;
    task.clusters.push_back(info);
  }

  DeterministicRng rng(options.seed);
  for (const ObjectInstance& inst : dataset.instances) {
    auto it = table.instances.find(inst.instance_id);
    if (inst.ignored && it == table.instances.end()) continue;
    if (it == table.instances.end()) {
      throw DataError("weight table does not cover instance '" +
                      inst.instance_id + "'");
    }
    const int idx = cluster_index.at({it->second.class_id,
                                      it->second.cluster});
    ToyInstance toy;
    toy.cluster = idx;
    toy.feature =
        inst.area * (1.0 + options.feature_noise * rng.normal());
    toy.target = 3.0 * std::log(inst.area) + 2.0 +
                 options.target_noise * rng.normal();
    toy.weight = uniform ? 1.0 : it->second.weight;
    task.instances.push_back(toy);
    ++task.clusters[static_cast<std::size_t>(idx)].count;
  }
  if (task.instances.empty()) {
    throw DataError("toy task has no instances");
  }

  // Standardize features within each cluster so the per-cluster quadratic
  // landscape is isotropic and a single global learning rate works.
  const std::size_t n_clusters = task.clusters.size();
  std::vector<double> mean(n_clusters, 0.0), var(n_clusters, 0.0);
  std::vector<std::int64_t> count(n_clusters, 0);
  for (const ToyInstance& t : task.instances) {
    const auto c = static_cast<std::size_t>(t.cluster);
    mean[c] += t.feature;
    ++count[c];
  }
  for (std::size_t c = 0; c < n_clusters; ++c) {
    if (count[c] > 0) mean[c] /= static_cast<double>(count[c]);
  }
  for (const ToyInstance& t : task.instances) {
    const auto c = static_cast<std::size_t>(t.cluster);
    const double d = t.feature - mean[c];
    var[c] += d * d;
  }
  for (std::size_t c = 0; c < n_clusters; ++c) {
    var[c] = count[c] > 0 ? var[c] / static_cast<double>(count[c]) : 0.0;
  }
  for (ToyInstance& t : task.instances) {
    const auto c = static_cast<std::size_t>(t.cluster);
    const double sd = var[c] > 0.0 ? std::sqrt(var[c]) : 1.0;
    t.feature = (t.feature - mean[c]) / sd;
  }
  return task;
}

inline double toy_total_loss(const ToyTask& task, const ToyParams& params) {
  double loss = 0.0;
  for (const ToyInstance& t : task.instances) {
    const auto c = static_cast<std::size_t>(t.cluster);
    const double pred = params.slope[c] * t.feature + params.intercept[c];
    loss += task.options.classification_constant +
            t.weight * detail::regression_loss(pred - t.target, task.options);
  }
  return loss;
}

/// Analytic gradient of the total loss with respect to every (slope,
/// intercept); the layout matches ToyParams.
inline ToyParams toy_gradient(const ToyTask& task, const ToyParams& params) {
  ToyParams grad;
  grad.slope.assign(task.clusters.size(), 0.0);
  grad.intercept.assign(task.clusters.size(), 0.0);
  for (const ToyInstance& t : task.instances) {
    const auto c = static_cast<std::size_t>(t.cluster);
    const double pred = params.slope[c] * t.feature + params.intercept[c];
    const double g =
        t.weight * detail::regression_loss_grad(pred - t.target, task.options);
    grad.slope[c] += g * t.feature;
    grad.intercept[c] += g;
  }
  return grad;
}

/// Fixed-budget gradient descent on the weighted objective. The step is
/// scaled by the total instance weight, so rescaling every weight by the
/// same constant leaves the trajectory unchanged and "uniform" is plain
/// mean-gradient descent.
inline ToyReport train_toy(const ToyTask& task) {
  const ToyOptions& opt = task.options;
  if (opt.iterations < 1 || !(opt.learning_rate > 0.0)) {
    throw ConfigError("toy training needs iterations >= 1 and a positive "
                      "learning rate");
  }
  double total_weight = 0.0;
  for (const ToyInstance& t : task.instances) total_weight += t.weight;
  if (!(total_weight > 0.0)) {
    throw DataError("toy task has zero total weight; nothing to train");
  }

  ToyParams params;
  params.slope.assign(task.clusters.size(), 0.0);
  params.intercept.assign(task.clusters.size(), 0.0);

  const double step = opt.learning_rate / total_weight;
  for (int it = 0; it < opt.iterations; ++it) {
    const ToyParams grad = toy_gradient(task, params);
    for (std::size_t c = 0; c < task.clusters.size(); ++c) {
      params.slope[c] -= step * grad.slope[c];
      params.intercept[c] -= step * grad.intercept[c];
      if (!std::isfinite(params.slope[c]) ||
          !std::isfinite(params.intercept[c])) {
        throw DataError("toy training diverged at learning rate " +
                        format_sig(opt.learning_rate));
      }
    }
  }

  ToyReport report;
  report.params = params;
  report.final_loss = toy_total_loss(task, params);
  if (!std::isfinite(report.final_loss)) {
    throw DataError("toy training diverged at learning rate " +
                    format_sig(opt.learning_rate));
  }

  std::vector<double> abs_err(task.clusters.size(), 0.0);
  for (const ToyInstance& t : task.instances) {
    const auto c = static_cast<std::size_t>(t.cluster);
    const double pred = params.slope[c] * t.feature + params.intercept[c];
    abs_err[c] += std::abs(pred - t.target);
  }
  for (std::size_t c = 0; c < task.clusters.size(); ++c) {
    ToyClusterError row;
    row.info = task.clusters[c];
    row.mean_abs_error =
        row.info.count > 0
            ? abs_err[c] / static_cast<double>(row.info.count)
            : 0.0;
    report.clusters.push_back(row);
  }

  report.head_cluster = 0;
  report.tail_cluster = 0;
  for (std::size_t c = 1; c < report.clusters.size(); ++c) {
    if (report.clusters[c].info.count >
        report.clusters[report.head_cluster].info.count) {
      report.head_cluster = c;
    }
    if (report.clusters[c].info.count <
        report.clusters[report.tail_cluster].info.count) {
      report.tail_cluster = c;
    }
  }
  report.head_error = report.clusters[report.head_cluster].mean_abs_error;
  report.tail_error = report.clusters[report.tail_cluster].mean_abs_error;
  return report;
}

/// Max relative deviation between the analytic gradient and central finite
/// differences at the given point.
inline double gradient_check(const ToyTask& task, const ToyParams& at,
                             double step = 1e-5) {
  const ToyParams analytic = toy_gradient(task, at);
  double worst = 0.0;
  auto probe = [&](std::vector<double> ToyParams::*field, std::size_t c,
                   double analytic_g) {
    ToyParams p = at;
    (p.*field)[c] += step;
    const double hi = toy_total_loss(task, p);
    (p.*field)[c] -= 2.0 * step;
    const double lo = toy_total_loss(task, p);
    const double fd = (hi - lo) / (2.0 * step);
    const double scale = std::max({1.0, std::abs(analytic_g), std::abs(fd)});
    worst = std::max(worst, std::abs(analytic_g - fd) / scale);
  };
  for (std::size_t c = 0; c < task.clusters.size(); ++c) {
    probe(&ToyParams::slope, c, analytic.slope[c]);
    probe(&ToyParams::intercept, c, analytic.intercept[c]);
  }
  return worst;
}

}  // namespace aruba

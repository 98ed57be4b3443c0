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
#include <span>
#include <string>
#include <vector>

#include "aruba/error.hpp"
#include "aruba/histogram.hpp"

namespace aruba {

/// Discrete Gaussian kernel with unit peak, used to amplify size histograms.
/// taps[half() + i] = exp(-i^2 / (2 sigma^2)) for i in [-half(), half()],
/// so the taps are symmetric, strictly decaying away from the center, and
/// tap(0) == 1 exactly.
struct GaussianKernel {
  int window = 1;
  double sigma = 1.0;
  std::vector<double> taps;  // size window

  int half() const { return (window - 1) / 2; }

  double tap(int offset) const {
    return taps[static_cast<std::size_t>(offset + half())];
  }
};

inline GaussianKernel make_kernel(int window, double sigma) {
  if (window < 1 || window % 2 == 0) {
    throw ConfigError("kernel window must be a positive odd integer, got " +
                      std::to_string(window));
  }
  if (!(sigma > 0.0) || !std::isfinite(sigma)) {
    throw ConfigError("kernel sigma must be a positive finite real");
  }
  GaussianKernel kernel;
  kernel.window = window;
  kernel.sigma = sigma;
  kernel.taps.resize(static_cast<std::size_t>(window));
  const int h = kernel.half();
  for (int i = -h; i <= h; ++i) {
    kernel.taps[static_cast<std::size_t>(i + h)] =
        std::exp(-static_cast<double>(i) * static_cast<double>(i) /
                 (2.0 * sigma * sigma));
  }
  return kernel;
}

/// Gaussian amplification: out[k] = sum_i tap(i) * bins[k + i], with indices
/// outside the histogram contributing zero. Because tap(0) == 1 and every
/// tap is positive, out[k] >= bins[k] for non-negative input.
inline std::vector<double> amplify(std::span<const double> bins,
                                   const GaussianKernel& kernel) {
  const int m = static_cast<int>(bins.size());
  const int h = kernel.half();
  std::vector<double> out(bins.size(), 0.0);
  for (int k = 0; k < m; ++k) {
    double acc = 0.0;
    const int i_lo = std::max(-h, -k);
    const int i_hi = std::min(h, m - 1 - k);
    for (int i = i_lo; i <= i_hi; ++i) {
      acc += kernel.tap(i) * bins[static_cast<std::size_t>(k + i)];
    }
    out[static_cast<std::size_t>(k)] = acc;
  }
  return out;
}

inline std::vector<double> amplify(const ClassSizeHistogram& hist,
                                   const GaussianKernel& kernel) {
  std::vector<double> bins(hist.counts.begin(), hist.counts.end());
  return amplify(bins, kernel);
}

}  // namespace aruba

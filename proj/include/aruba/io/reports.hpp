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
#include <cmath>
#include <map>
#include <string>
#include <vector>

#include "aruba/analyze.hpp"
#include "aruba/cluster.hpp"
#include "aruba/histogram.hpp"
#include "aruba/io/float_format.hpp"
#include "aruba/io/json_writer.hpp"
#include "aruba/version.hpp"

namespace aruba {

inline std::string report_stamp(const std::string& config_line) {
  return "# " + std::string(kToolName) + " " + kToolVersion + "; " +
         config_line + "\n";
}

inline std::string write_histogram_csv(const ClassSizeHistogram& hist,
                                       const std::string& config_line) {
  std::string out = report_stamp(config_line);
  out += "bin_lo,bin_hi,count\n";
  for (std::size_t i = 0; i < hist.size(); ++i) {
    out += format_sig(hist.bin_edges[i]) + "," +
           format_sig(hist.bin_edges[i + 1]) + "," +
           std::to_string(hist.counts[i]) + "\n";
  }
  return out;
}

inline std::string write_cluster_csv(const ClassSizeHistogram& hist,
                                     const ClusterModel& model,
                                     const std::string& config_line) {
  std::string out = report_stamp(config_line);
  out += "class_id,cluster,area_lo,area_hi,raw_count,amplified_mass\n";
  for (std::size_t s = 0; s + 1 < model.boundaries.size(); ++s) {
    out += std::to_string(model.class_id) + "," + std::to_string(s) + "," +
           format_sig(hist.bin_edges[model.boundaries[s]]) + "," +
           format_sig(hist.bin_edges[model.boundaries[s + 1]]) + "," +
           std::to_string(model.raw_count[s]) + "," +
           format_sig(model.amplified_count[s]) + "\n";
  }
  return out;
}

/// Class frequencies plus the classic per-class effective-number baseline
/// weight (computed from retained counts), for comparing class-level against
/// size-level balancing. Classes with no retained instances get an empty
/// baseline cell.
inline std::string write_class_frequency_csv(
    const std::vector<ClassFrequency>& rows,
    const std::map<int, double>& class_balanced_baseline,
    const std::string& config_line) {
  std::string out = report_stamp(config_line);
  out += "class_id,name,retained,ignored,class_balanced_weight\n";
  for (const ClassFrequency& row : rows) {
    // Class names come from annotation files and may need CSV quoting.
    const std::string name = csv_field(row.name);
    const auto baseline = class_balanced_baseline.find(row.class_id);
    out += std::to_string(row.class_id) + "," + name + "," +
           std::to_string(row.retained) + "," + std::to_string(row.ignored) +
           "," +
           (baseline != class_balanced_baseline.end()
                ? format_sig(baseline->second)
                : "") +
           "\n";
  }
  return out;
}

inline std::string write_imbalance_json(const ImbalanceSummary& s,
                                        const std::string& config_line) {
  JsonWriter w;
  w.begin_object();
  w.key("config");
  w.value(config_line);
  w.key("gini");
  w.value(s.gini);
  w.key("head_count");
  w.value(s.head_count);
  w.key("head_tail_ratio");
  w.value(s.head_tail_ratio);
  w.key("instance_count");
  w.value(s.instance_count);
  w.key("max_area");
  w.value(s.max_area);
  w.key("mean_area");
  w.value(s.mean_area);
  w.key("median_area");
  w.value(s.median_area);
  w.key("min_area");
  w.value(s.min_area);
  w.key("range_quantile");
  w.value(s.range_quantile);
  w.key("tail_count");
  w.value(s.tail_count);
  w.key("tool");
  w.value(kToolName);
  w.key("version");
  w.value(kToolVersion);
  w.end_object();
  return w.str();
}

namespace detail {

struct SvgBar {
  double height01 = 0.0;  // in [0, 1]
  int color_index = 0;
};

// Minimal deterministic bar chart. One rect per bin, optional log-scaled
// heights, bars colored by a small palette index (used to show clusters).
inline std::string write_bar_svg(const std::vector<SvgBar>& bars,
                                 const std::string& title,
                                 const std::string& y_label,
                                 const std::string& config_line) {
  static const std::vector<std::string> palette = {
      "#4c78a8", "#f58518", "#54a24b", "#e45756", "#72b7b2",
      "#eeca3b", "#b279a2", "#ff9da6", "#9d755d", "#bab0ac"};
  const double width = 960.0, height = 420.0;
  const double margin_left = 50.0, margin_bottom = 30.0, margin_top = 30.0;
  const double plot_w = width - margin_left - 10.0;
  const double plot_h = height - margin_top - margin_bottom;
  const double bar_w = plot_w / static_cast<double>(std::max<std::size_t>(
                                    bars.size(), 1));

  std::string out;
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" +
         format_sig(width) + "\" height=\"" + format_sig(height) + "\">\n";
  out += "<!-- " + std::string(kToolName) + " " + kToolVersion + "; " +
         config_line + " -->\n";
  out += "<text x=\"10\" y=\"20\" font-family=\"sans-serif\" font-size=\"14\">" +
         title + "</text>\n";
  out += "<text x=\"10\" y=\"" + format_sig(height - 8.0) +
         "\" font-family=\"sans-serif\" font-size=\"11\">" + y_label +
         "</text>\n";
  for (std::size_t i = 0; i < bars.size(); ++i) {
    const double h = std::clamp(bars[i].height01, 0.0, 1.0) * plot_h;
    if (h <= 0.0) continue;
    const double x = margin_left + static_cast<double>(i) * bar_w;
    const double y = margin_top + (plot_h - h);
    out += "<rect x=\"" + format_sig(x) + "\" y=\"" + format_sig(y) +
           "\" width=\"" + format_sig(std::max(bar_w, 0.2)) + "\" height=\"" +
           format_sig(h) + "\" fill=\"" +
           palette[static_cast<std::size_t>(bars[i].color_index) %
                   palette.size()] +
           "\"/>\n";
  }
  out += "<line x1=\"" + format_sig(margin_left) + "\" y1=\"" +
         format_sig(margin_top + plot_h) + "\" x2=\"" +
         format_sig(margin_left + plot_w) + "\" y2=\"" +
         format_sig(margin_top + plot_h) +
         "\" stroke=\"#333333\" stroke-width=\"1\"/>\n";
  out += "</svg>\n";
  return out;
}

inline double bar_height(double count, double max_count, bool log_y) {
  if (count <= 0.0 || max_count <= 0.0) return 0.0;
  if (!log_y) return count / max_count;
  return std::log10(1.0 + count) / std::log10(1.0 + max_count);
}

}  // namespace detail

inline std::string write_histogram_svg(const ClassSizeHistogram& hist,
                                       bool log_y,
                                       const std::string& config_line) {
  double max_count = 0.0;
  for (auto c : hist.counts) {
    max_count = std::max(max_count, static_cast<double>(c));
  }
  std::vector<detail::SvgBar> bars(hist.size());
  for (std::size_t i = 0; i < hist.size(); ++i) {
    bars[i].height01 = detail::bar_height(static_cast<double>(hist.counts[i]),
                                          max_count, log_y);
    bars[i].color_index = 0;
  }
  return detail::write_bar_svg(
      bars, "size histogram, class " + std::to_string(hist.class_id),
      log_y ? "log10(1 + count)" : "count", config_line);
}

/// Amplified histogram with bars colored by cluster membership.
inline std::string write_cluster_svg(const ClusterModel& model,
                                     const std::vector<double>& amplified,
                                     bool log_y,
                                     const std::string& config_line) {
  double max_mass = 0.0;
  for (double a : amplified) max_mass = std::max(max_mass, a);
  std::vector<detail::SvgBar> bars(amplified.size());
  for (std::size_t i = 0; i < amplified.size(); ++i) {
    bars[i].height01 = detail::bar_height(amplified[i], max_mass, log_y);
    bars[i].color_index = static_cast<int>(model.cluster_of_bin(i));
  }
  return detail::write_bar_svg(
      bars,
      "amplified size distribution by cluster, class " +
          std::to_string(model.class_id),
      log_y ? "log10(1 + amplified mass)" : "amplified mass", config_line);
}

}  // namespace aruba

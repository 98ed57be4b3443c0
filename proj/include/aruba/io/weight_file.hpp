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

#include <filesystem>
#include <string>

#include "aruba/io/json_writer.hpp"
#include "aruba/version.hpp"
#include "aruba/weights.hpp"

namespace aruba {

inline void write_config_json(JsonWriter& w, const WeightConfig& config) {
  w.begin_object();
  w.key("beta");
  w.value(config.beta);
  w.key("bin_count");
  w.value(config.bin_count);
  w.key("include_ignored");
  w.value(config.include_ignored);
  w.key("k");
  w.value(config.k);
  w.key("kernel_sigma");
  w.value(config.kernel_sigma);
  w.key("kernel_window");
  w.value(config.kernel_window);
  w.key("normalize");
  w.value(config.normalize);
  w.key("root");
  w.value(config.root);
  w.key("weight_floor");
  w.value(config.weight_floor);
  w.end_object();
}

/// JSON weight file: header (tool, resolved config, per-class k, notes,
/// warnings), per-class cluster tables, and the per-instance weight map.
/// Keys are emitted in a fixed sorted order and floats with 12 significant
/// digits, so identical inputs produce identical bytes.
inline std::string write_weight_json(const WeightTable& table) {
  JsonWriter w;
  w.begin_object();

  w.key("clusters");
  w.begin_object();
  {
    // Rows are already ordered by (class_id, cluster).
    std::size_t i = 0;
    while (i < table.rows.size()) {
      const int class_id = table.rows[i].class_id;
      w.key(std::to_string(class_id));
      w.begin_array();
      for (; i < table.rows.size() && table.rows[i].class_id == class_id;
           ++i) {
        const ClusterWeightRow& row = table.rows[i];
        w.begin_object();
        w.key("amplified_mass");
        w.value(row.amplified_mass);
        w.key("area_hi");
        w.value(row.area_hi);
        w.key("area_lo");
        w.value(row.area_lo);
        w.key("cluster");
        w.value(row.cluster);
        w.key("effective_number");
        w.value(row.effective_number);
        w.key("raw_count");
        w.value(row.raw_count);
        w.key("weight");
        w.value(row.weight);
        w.end_object();
      }
      w.end_array();
    }
  }
  w.end_object();

  w.key("header");
  w.begin_object();
  w.key("categories");
  w.begin_object();
  for (const auto& [id, name] : table.categories) {
    w.key(std::to_string(id));
    w.value(name);
  }
  w.end_object();
  w.key("config");
  write_config_json(w, table.config);
  w.key("format_version");
  w.value(1);
  w.key("k_used");
  w.begin_object();
  for (const auto& [class_id, k] : table.k_used) {
    w.key(std::to_string(class_id));
    w.value(k);
  }
  w.end_object();
  w.key("notes");
  w.begin_array();
  for (const std::string& note : table.notes) w.value(note);
  w.end_array();
  w.key("provenance");
  w.begin_array();
  // Basenames only, so the emitted bytes do not depend on where the inputs
  // happen to live.
  for (const std::string& source : table.provenance) {
    w.value(std::filesystem::path(source).filename().string());
  }
  w.end_array();
  w.key("tool");
  w.value(kToolName);
  w.key("version");
  w.value(kToolVersion);
  w.key("warnings");
  w.begin_array();
  for (const std::string& warning : table.warnings) w.value(warning);
  w.end_array();
  w.end_object();

  w.key("instances");
  w.begin_object();
  for (const auto& [instance_id, iw] : table.instances) {
    w.key(instance_id);
    w.begin_object();
    w.key("class_id");
    w.value(iw.class_id);
    w.key("cluster");
    w.value(iw.cluster);
    w.key("weight");
    w.value(iw.weight);
    w.end_object();
  }
  w.end_object();

  w.end_object();
  return w.str();
}

/// CSV companion of the per-instance map, for trainer ingestion.
inline std::string write_weight_csv(const WeightTable& table) {
  std::string out;
  out += "# " + std::string(kToolName) + " " + kToolVersion +
         " instance weights; config: beta=" + format_sig(table.config.beta) +
         " root=" + std::to_string(table.config.root) +
         " k=" + std::to_string(table.config.k) +
         " window=" + std::to_string(table.config.kernel_window) +
         " sigma=" + format_sig(table.config.kernel_sigma) +
         " bins=" + std::to_string(table.config.bin_count) +
         " normalize=" + (table.config.normalize ? "1" : "0") +
         " weight_floor=" + format_sig(table.config.weight_floor) +
         " include_ignored=" + (table.config.include_ignored ? "1" : "0") +
         "\n";
  out += "instance_id,class_id,cluster,weight\n";
  for (const auto& [instance_id, iw] : table.instances) {
    out += csv_field(instance_id) + "," + std::to_string(iw.class_id) + "," +
           std::to_string(iw.cluster) + "," + format_sig(iw.weight) + "\n";
  }
  return out;
}

}  // namespace aruba

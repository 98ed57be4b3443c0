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
#include <array>
#include <filesystem>
#include <string>
#include <vector>

#include "aruba/dataset.hpp"
#include "aruba/error.hpp"
#include "aruba/ingest/text_util.hpp"

namespace aruba {

namespace detail {

inline const std::array<const char*, 12>& visdrone_category_names() {
  static const std::array<const char*, 12> names = {
      "ignored-regions", "pedestrian", "people",    "bicycle",
      "car",             "van",        "truck",     "tricycle",
      "awning-tricycle", "bus",        "motor",     "others"};
  return names;
}

}  // namespace detail

/// Parses per-image VisDrone-DET ground-truth files
/// (`left,top,width,height,score,category,truncation,occlusion`).
/// Categories 0 (ignored regions) and 11 (others) mark the instance ignored.
inline Dataset parse_visdrone(
    const std::vector<std::filesystem::path>& files) {
  std::vector<std::filesystem::path> sorted_files = files;
  std::sort(sorted_files.begin(), sorted_files.end());

  Dataset dataset;
  dataset.source_format = SourceFormat::visdrone;

  for (const auto& path : sorted_files) {
    dataset.provenance.push_back(path.string());
    const std::string image_id = path.stem().string();
    const std::vector<std::string> lines = split_lines(read_file(path));
    for (std::size_t li = 0; li < lines.size(); ++li) {
      const std::string& line = lines[li];
      if (line.empty()) continue;
      const std::string where = path.string() + ":" + std::to_string(li + 1);
      const std::vector<std::string_view> fields = split_char(line, ',');
      if (fields.size() != 8) {
        throw RecordError("expected 8 comma-separated fields, got " +
                          std::to_string(fields.size()) + " at " + where);
      }
      std::array<double, 4> box_fields{};
      for (int c = 0; c < 4; ++c) {
        auto v = parse_double(fields[c]);
        if (!v) {
          throw RecordError("non-numeric field #" + std::to_string(c + 1) +
                            " at " + where);
        }
        box_fields[static_cast<std::size_t>(c)] = *v;
      }
      auto category = parse_int(fields[5]);
      if (!category) {
        throw RecordError("non-numeric category at " + where);
      }
      if (box_fields[2] <= 0.0 || box_fields[3] <= 0.0) {
        throw RecordError("non-positive width/height at " + where);
      }

      ObjectInstance inst;
      inst.instance_id = image_id + ":" + pad_number(static_cast<long long>(li + 1), 6);
      inst.image_id = image_id;
      inst.class_id = static_cast<int>(*category);
      BoxGeometry box{box_fields[0], box_fields[1], box_fields[2],
                      box_fields[3]};
      inst.geometry = box;
      inst.area = box.width * box.height;
      inst.ignored = inst.class_id == 0 || inst.class_id == 11;

      if (dataset.categories.find(inst.class_id) == dataset.categories.end()) {
        const auto& names = detail::visdrone_category_names();
        dataset.categories[inst.class_id] =
            inst.class_id >= 0 &&
                    inst.class_id < static_cast<int>(names.size())
                ? names[static_cast<std::size_t>(inst.class_id)]
                : "category_" + std::to_string(inst.class_id);
      }
      dataset.instances.push_back(std::move(inst));
    }
  }

  dataset.finalize();
  return dataset;
}

}  // namespace aruba

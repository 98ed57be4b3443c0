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
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "aruba/dataset.hpp"
#include "aruba/error.hpp"
#include "aruba/geometry.hpp"
#include "aruba/ingest/text_util.hpp"

namespace aruba {

namespace detail {

struct DotaRecord {
  std::string image_id;
  int line_number = 0;  // 1-based, for ids and error messages
  QuadGeometry quad;
  std::string category;
  bool difficult = false;
};

inline void parse_dota_text(const std::string& image_id,
                            const std::string& text,
                            const std::string& file_label,
                            std::vector<DotaRecord>& records) {
  const std::vector<std::string> lines = split_lines(text);
  for (std::size_t li = 0; li < lines.size(); ++li) {
    const std::string& line = lines[li];
    if (line.empty()) continue;
    // Optional metadata headers carried by DOTA label files.
    if (line.rfind("imagesource:", 0) == 0 || line.rfind("gsd:", 0) == 0) {
      continue;
    }
    const std::vector<std::string_view> tokens = split_whitespace(line);
    const std::string where =
        file_label + ":" + std::to_string(li + 1);
    if (tokens.size() != 10) {
      throw RecordError("expected 10 tokens (x1 y1 ... x4 y4 category "
                        "difficult), got " +
                        std::to_string(tokens.size()) + " at " + where);
    }
    DotaRecord rec;
    rec.image_id = image_id;
    rec.line_number = static_cast<int>(li + 1);
    for (int c = 0; c < 4; ++c) {
      auto x = parse_double(tokens[2 * c]);
      auto y = parse_double(tokens[2 * c + 1]);
      if (!x || !y) {
        throw RecordError("non-numeric coordinate at " + where);
      }
      rec.quad.vertices[c] = Point{*x, *y};
    }
    rec.category = std::string(tokens[8]);
    auto difficult = parse_int(tokens[9]);
    if (!difficult) {
      throw RecordError("non-numeric difficult flag at " + where);
    }
    rec.difficult = *difficult != 0;
    records.push_back(std::move(rec));
  }
}

}  // namespace detail

/// Parses a set of per-image DOTA annotation files. Category names are
/// discovered from the data and mapped to dense class ids in sorted-name
/// order; `difficult == 1` marks the instance ignored.
inline Dataset parse_dota(const std::vector<std::filesystem::path>& files) {
  std::vector<std::filesystem::path> sorted_files = files;
  std::sort(sorted_files.begin(), sorted_files.end());

  Dataset dataset;
  dataset.source_format = SourceFormat::dota;

  std::vector<detail::DotaRecord> records;
  for (const auto& path : sorted_files) {
    dataset.provenance.push_back(path.string());
    detail::parse_dota_text(path.stem().string(), read_file(path),
                            path.string(), records);
  }

  // Dense class ids in lexicographic category-name order, so the id
  // assignment is reproducible from the data alone.
  std::map<std::string, int> class_ids;
  for (const auto& rec : records) {
    class_ids.emplace(rec.category, 0);
  }
  int next_id = 0;
  for (auto& [name, id] : class_ids) {
    id = next_id++;
    dataset.categories[id] = name;
  }

  for (const auto& rec : records) {
    ObjectInstance inst;
    inst.instance_id = rec.image_id + ":" + pad_number(rec.line_number, 6);
    inst.image_id = rec.image_id;
    inst.class_id = class_ids.at(rec.category);
    inst.geometry = rec.quad;
    inst.area = polygon_area(rec.quad.vertices);
    inst.ignored = rec.difficult;
    if (quad_self_intersects(rec.quad.vertices)) {
      dataset.warnings.push_back("self-intersecting quadrilateral '" +
                                 inst.instance_id + "'");
    }
    if (!(inst.area > 0.0) && !inst.ignored) {
      inst.ignored = true;
      dataset.warnings.push_back("zero-area record flagged as ignored: '" +
                                 inst.instance_id + "'");
    }
    dataset.instances.push_back(std::move(inst));
  }

  dataset.finalize();
  return dataset;
}

}  // namespace aruba

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
#include <map>
#include <string>
#include <vector>

#include "aruba/dataset.hpp"
#include "aruba/error.hpp"
#include "aruba/ingest/canonical.hpp"
#include "aruba/ingest/text_util.hpp"
#include "aruba/io/float_format.hpp"
#include "aruba/io/json_writer.hpp"

namespace aruba {

namespace detail {

inline std::array<Point, 4> as_quad(const Geometry& geometry) {
  if (const auto* quad = std::get_if<QuadGeometry>(&geometry)) {
    return quad->vertices;
  }
  const auto& box = std::get<BoxGeometry>(geometry);
  return {Point{box.x, box.y}, Point{box.x + box.width, box.y},
          Point{box.x + box.width, box.y + box.height},
          Point{box.x, box.y + box.height}};
}

inline BoxGeometry as_box(const Geometry& geometry) {
  if (const auto* box = std::get_if<BoxGeometry>(&geometry)) {
    return *box;
  }
  const auto& quad = std::get<QuadGeometry>(geometry).vertices;
  double lo_x = quad[0].x, hi_x = quad[0].x;
  double lo_y = quad[0].y, hi_y = quad[0].y;
  for (const Point& p : quad) {
    lo_x = std::min(lo_x, p.x);
    hi_x = std::max(hi_x, p.x);
    lo_y = std::min(lo_y, p.y);
    hi_y = std::max(hi_y, p.y);
  }
  return BoxGeometry{lo_x, lo_y, hi_x - lo_x, hi_y - lo_y};
}

inline std::map<std::string, std::vector<const ObjectInstance*>> by_image(
    const Dataset& dataset) {
  std::map<std::string, std::vector<const ObjectInstance*>> groups;
  for (const ObjectInstance& inst : dataset.instances) {
    groups[inst.image_id].push_back(&inst);
  }
  return groups;
}

}  // namespace detail

/// Writes one DOTA label file per image under `dir`.
inline void write_dota_dir(const Dataset& dataset,
                           const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  for (const auto& [image_id, instances] : detail::by_image(dataset)) {
    std::string out;
    for (const ObjectInstance* inst : instances) {
      const auto quad = detail::as_quad(inst->geometry);
      for (const Point& p : quad) {
        out += format_sig(p.x) + " " + format_sig(p.y) + " ";
      }
      out += dataset.categories.at(inst->class_id) + " " +
             (inst->ignored ? "1" : "0") + "\n";
    }
    write_file(dir / (image_id + ".txt"), out);
  }
}

/// Writes one VisDrone ground-truth file per image under `dir`.
inline void write_visdrone_dir(const Dataset& dataset,
                               const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  for (const auto& [image_id, instances] : detail::by_image(dataset)) {
    std::string out;
    for (const ObjectInstance* inst : instances) {
      const BoxGeometry box = detail::as_box(inst->geometry);
      out += format_sig(box.x) + "," + format_sig(box.y) + "," +
             format_sig(box.width) + "," + format_sig(box.height) + "," +
             (inst->ignored ? "0" : "1") + "," +
             std::to_string(inst->class_id) + ",0,0\n";
    }
    write_file(dir / (image_id + ".txt"), out);
  }
}

/// Writes a COCO-subset JSON document. Original numeric annotation ids are
/// preserved when the instance id still carries them; otherwise annotations
/// are renumbered sequentially.
inline std::string write_coco_json(const Dataset& dataset) {
  JsonWriter w;
  w.begin_object();

  w.key("annotations");
  w.begin_array();
  long long next_id = 1;
  for (const ObjectInstance& inst : dataset.instances) {
    const BoxGeometry box = detail::as_box(inst.geometry);
    long long ann_id;
    if (auto parsed = parse_int(inst.instance_id)) {
      ann_id = *parsed;
    } else {
      ann_id = next_id;
    }
    ++next_id;
    w.begin_object();
    w.key("area");
    w.value(inst.area);
    w.key("bbox");
    w.begin_array();
    w.value(box.x);
    w.value(box.y);
    w.value(box.width);
    w.value(box.height);
    w.end_array();
    w.key("category_id");
    w.value(inst.class_id);
    w.key("id");
    w.value(static_cast<std::int64_t>(ann_id));
    w.key("image_id");
    if (auto img = parse_int(inst.image_id)) {
      w.value(static_cast<std::int64_t>(*img));
    } else {
      w.value(inst.image_id);
    }
    w.key("iscrowd");
    w.value(inst.ignored ? 1 : 0);
    w.end_object();
  }
  w.end_array();

  w.key("categories");
  w.begin_array();
  for (const auto& [id, name] : dataset.categories) {
    w.begin_object();
    w.key("id");
    w.value(id);
    w.key("name");
    w.value(name);
    w.end_object();
  }
  w.end_array();

  w.key("images");
  w.begin_array();
  for (const auto& [image_id, instances] : detail::by_image(dataset)) {
    w.begin_object();
    w.key("id");
    if (auto img = parse_int(image_id)) {
      w.value(static_cast<std::int64_t>(*img));
    } else {
      w.value(image_id);
    }
    w.end_object();
  }
  w.end_array();

  w.end_object();
  return w.str();
}

/// Writes the dataset in its source annotation format. DOTA and VisDrone
/// produce a directory of per-image files; COCO and synthetic datasets
/// produce a single file under `dir`.
inline void write_dataset(const Dataset& dataset,
                          const std::filesystem::path& dir) {
  switch (dataset.source_format) {
    case SourceFormat::dota:
      write_dota_dir(dataset, dir);
      return;
    case SourceFormat::visdrone:
      write_visdrone_dir(dataset, dir);
      return;
    case SourceFormat::coco:
      std::filesystem::create_directories(dir);
      write_file(dir / "annotations.json", write_coco_json(dataset));
      return;
    case SourceFormat::synthetic:
      std::filesystem::create_directories(dir);
      write_file(dir / "dataset.json", write_canonical(dataset));
      return;
  }
  throw DataError("unknown source format");
}

}  // namespace aruba

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
#include <vector>

#include <json.hpp>

#include "aruba/dataset.hpp"
#include "aruba/error.hpp"
#include "aruba/geometry.hpp"
#include "aruba/ingest/text_util.hpp"

namespace aruba {

namespace detail {

inline std::string coco_id_string(const nlohmann::json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number_integer()) return std::to_string(v.get<long long>());
  if (v.is_number()) return std::to_string(v.get<double>());
  throw SchemaError("id value is neither string nor number");
}

// First polygon ring of a COCO `segmentation` field, if it is usable:
// an array of arrays of an even number (>= 6) of coordinates. RLE
// segmentations (objects) and empty arrays yield no polygon.
inline std::optional<std::vector<Point>> coco_segmentation_ring(
    const nlohmann::json& seg) {
  if (!seg.is_array() || seg.empty()) return std::nullopt;
  const nlohmann::json& ring = seg.front();
  if (!ring.is_array() || ring.size() < 6 || ring.size() % 2 != 0) {
    return std::nullopt;
  }
  std::vector<Point> points;
  points.reserve(ring.size() / 2);
  for (std::size_t i = 0; i + 1 < ring.size(); i += 2) {
    if (!ring[i].is_number() || !ring[i + 1].is_number()) return std::nullopt;
    points.push_back({ring[i].get<double>(), ring[i + 1].get<double>()});
  }
  return points;
}

}  // namespace detail

/// Parses a COCO-style annotation document. Area comes from the first
/// segmentation polygon ring when present, otherwise from the bbox.
/// `iscrowd == 1` marks the instance ignored.
inline Dataset parse_coco(const std::string& json_text,
                          const std::string& source_name = "<memory>") {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError("malformed JSON in " + source_name + " at byte " +
                     std::to_string(e.byte) + ": " + e.what());
  }

  for (const char* key : {"images", "annotations", "categories"}) {
    if (!doc.contains(key) || !doc[key].is_array()) {
      throw SchemaError("COCO document " + source_name +
                        " is missing required array '" + key + "'");
    }
  }

  Dataset dataset;
  dataset.source_format = SourceFormat::coco;
  dataset.provenance.push_back(source_name);

  for (std::size_t i = 0; i < doc["categories"].size(); ++i) {
    const nlohmann::json& cat = doc["categories"][i];
    if (!cat.contains("id") || !cat["id"].is_number_integer()) {
      throw SchemaError("category #" + std::to_string(i) +
                        " is missing required key 'id'");
    }
    const int id = cat["id"].get<int>();
    std::string name = cat.contains("name") && cat["name"].is_string()
                           ? cat["name"].get<std::string>()
                           : "category_" + std::to_string(id);
    dataset.categories[id] = std::move(name);
  }

  for (std::size_t i = 0; i < doc["annotations"].size(); ++i) {
    const nlohmann::json& ann = doc["annotations"][i];
    auto describe = [&](void) -> std::string {
      if (ann.contains("id") && ann["id"].is_number()) {
        return "annotation id " + detail::coco_id_string(ann["id"]);
      }
      return "annotation #" + std::to_string(i);
    };
    for (const char* key : {"id", "image_id", "category_id", "bbox"}) {
      if (!ann.contains(key)) {
        throw SchemaError("missing required key '" + std::string(key) +
                          "' in " + describe());
      }
    }
    if (!ann["id"].is_number_integer()) {
      throw SchemaError("key 'id' must be an integer in " + describe());
    }
    if (!ann["category_id"].is_number_integer()) {
      throw SchemaError("key 'category_id' must be an integer in " +
                        describe());
    }
    if (!ann["bbox"].is_array() || ann["bbox"].size() != 4 ||
        !ann["bbox"][0].is_number() || !ann["bbox"][1].is_number() ||
        !ann["bbox"][2].is_number() || !ann["bbox"][3].is_number()) {
      throw SchemaError("key 'bbox' must be [x, y, w, h] in " + describe());
    }

    ObjectInstance inst;
    inst.instance_id = pad_number(ann["id"].get<long long>(), 12);
    inst.image_id = detail::coco_id_string(ann["image_id"]);
    inst.class_id = ann["category_id"].get<int>();

    BoxGeometry box{ann["bbox"][0].get<double>(), ann["bbox"][1].get<double>(),
                    ann["bbox"][2].get<double>(), ann["bbox"][3].get<double>()};
    if (box.width < 0.0 || box.height < 0.0) {
      throw RecordError("negative bbox width/height in " + describe());
    }
    inst.geometry = box;

    if (ann.contains("iscrowd") && ann["iscrowd"].is_number_integer() &&
        ann["iscrowd"].get<long long>() == 1) {
      inst.ignored = true;
    }

    inst.area = box.width * box.height;
    if (ann.contains("segmentation")) {
      if (auto ring = detail::coco_segmentation_ring(ann["segmentation"])) {
        inst.area = polygon_area(std::span<const Point>(*ring));
      }
    }
    if (!(inst.area > 0.0) && !inst.ignored) {
      inst.ignored = true;
      dataset.warnings.push_back("zero-area record flagged as ignored: " +
                                 describe());
    }

    if (dataset.categories.find(inst.class_id) == dataset.categories.end()) {
      throw SchemaError("unknown category_id " +
                        std::to_string(inst.class_id) + " in " + describe());
    }
    dataset.instances.push_back(std::move(inst));
  }

  dataset.finalize();
  return dataset;
}

inline Dataset parse_coco_file(const std::filesystem::path& path) {
  return parse_coco(read_file(path), path.string());
}

}  // namespace aruba

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

#include <json.hpp>

#include "aruba/dataset.hpp"
#include "aruba/error.hpp"
#include "aruba/ingest/text_util.hpp"
#include "aruba/version.hpp"

namespace aruba {

// Canonical dump: the internal interchange form of a Dataset. Emitted with
// sorted keys and shortest-round-trip doubles, so re-reading a dump yields a
// bit-identical Dataset and re-emitting yields identical bytes.

inline constexpr int kCanonicalVersion = 1;

inline std::string write_canonical(const Dataset& dataset,
                                   const nlohmann::json* generator = nullptr) {
  nlohmann::json doc;
  doc["aruba_canonical_version"] = kCanonicalVersion;
  doc["tool"] = kToolName;
  doc["tool_version"] = kToolVersion;
  doc["source_format"] = to_string(dataset.source_format);
  doc["provenance"] = dataset.provenance;
  if (generator != nullptr) {
    // Resolved generator configuration, echoed so the file can be re-created.
    doc["generator"] = *generator;
  }

  nlohmann::json categories = nlohmann::json::object();
  for (const auto& [id, name] : dataset.categories) {
    categories[std::to_string(id)] = name;
  }
  doc["categories"] = std::move(categories);

  nlohmann::json instances = nlohmann::json::array();
  for (const ObjectInstance& inst : dataset.instances) {
    nlohmann::json j;
    j["instance_id"] = inst.instance_id;
    j["image_id"] = inst.image_id;
    j["class_id"] = inst.class_id;
    j["area"] = inst.area;
    j["ignored"] = inst.ignored;
    if (const auto* box = std::get_if<BoxGeometry>(&inst.geometry)) {
      j["geometry"] = {{"type", "box"},
                       {"x", box->x},
                       {"y", box->y},
                       {"width", box->width},
                       {"height", box->height}};
    } else {
      const auto& quad = std::get<QuadGeometry>(inst.geometry);
      nlohmann::json points = nlohmann::json::array();
      for (const Point& p : quad.vertices) {
        points.push_back({p.x, p.y});
      }
      j["geometry"] = {{"type", "quad"}, {"points", std::move(points)}};
    }
    instances.push_back(std::move(j));
  }
  doc["instances"] = std::move(instances);

  return doc.dump(2) + "\n";
}

inline Dataset read_canonical(const std::string& json_text,
                              const std::string& source_name = "<memory>") {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError("malformed JSON in " + source_name + " at byte " +
                     std::to_string(e.byte) + ": " + e.what());
  }
  if (!doc.contains("aruba_canonical_version") ||
      !doc["aruba_canonical_version"].is_number_integer()) {
    throw SchemaError(source_name + " is not a canonical dataset dump");
  }
  if (doc["aruba_canonical_version"].get<int>() != kCanonicalVersion) {
    throw SchemaError("unsupported canonical dump version in " + source_name);
  }
  for (const char* key : {"source_format", "categories", "instances"}) {
    if (!doc.contains(key)) {
      throw SchemaError("canonical dump " + source_name +
                        " is missing required key '" + key + "'");
    }
  }

  Dataset dataset;
  dataset.source_format =
      source_format_from_string(doc["source_format"].get<std::string>());
  if (doc.contains("provenance")) {
    dataset.provenance = doc["provenance"].get<std::vector<std::string>>();
  }
  for (const auto& [key, name] : doc["categories"].items()) {
    auto id = parse_int(key);
    if (!id) {
      throw SchemaError("non-integer category key '" + key + "' in " +
                        source_name);
    }
    dataset.categories[static_cast<int>(*id)] = name.get<std::string>();
  }

  for (const auto& j : doc["instances"]) {
    for (const char* key :
         {"instance_id", "image_id", "class_id", "area", "ignored",
          "geometry"}) {
      if (!j.contains(key)) {
        throw SchemaError("canonical instance is missing key '" +
                          std::string(key) + "' in " + source_name);
      }
    }
    ObjectInstance inst;
    inst.instance_id = j["instance_id"].get<std::string>();
    inst.image_id = j["image_id"].get<std::string>();
    inst.class_id = j["class_id"].get<int>();
    inst.area = j["area"].get<double>();
    inst.ignored = j["ignored"].get<bool>();
    const nlohmann::json& g = j["geometry"];
    const std::string type = g.at("type").get<std::string>();
    if (type == "box") {
      inst.geometry = BoxGeometry{g.at("x").get<double>(),
                                  g.at("y").get<double>(),
                                  g.at("width").get<double>(),
                                  g.at("height").get<double>()};
    } else if (type == "quad") {
      QuadGeometry quad;
      const nlohmann::json& points = g.at("points");
      if (!points.is_array() || points.size() != 4) {
        throw SchemaError("quad geometry must have 4 points in " +
                          source_name);
      }
      for (std::size_t i = 0; i < 4; ++i) {
        quad.vertices[i] =
            Point{points[i][0].get<double>(), points[i][1].get<double>()};
      }
      inst.geometry = quad;
    } else {
      throw SchemaError("unknown geometry type '" + type + "' in " +
                        source_name);
    }
    dataset.instances.push_back(std::move(inst));
  }

  dataset.finalize();
  return dataset;
}

inline Dataset read_canonical_file(const std::filesystem::path& path) {
  return read_canonical(read_file(path), path.string());
}

}  // namespace aruba

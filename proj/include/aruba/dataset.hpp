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
#include <cstdint>
#include <map>
#include <string>
#include <variant>
#include <vector>

#include "aruba/error.hpp"
#include "aruba/geometry.hpp"

namespace aruba {

enum class SourceFormat { coco, dota, visdrone, synthetic };

inline const char* to_string(SourceFormat f) {
  switch (f) {
    case SourceFormat::coco: return "coco";
    case SourceFormat::dota: return "dota";
    case SourceFormat::visdrone: return "visdrone";
    case SourceFormat::synthetic: return "synthetic";
  }
  return "unknown";
}

inline SourceFormat source_format_from_string(const std::string& s) {
  if (s == "coco") return SourceFormat::coco;
  if (s == "dota") return SourceFormat::dota;
  if (s == "visdrone") return SourceFormat::visdrone;
  if (s == "synthetic") return SourceFormat::synthetic;
  throw SchemaError("unknown source format: '" + s + "'");
}

/// Axis-aligned box in pixel coordinates.
struct BoxGeometry {
  double x = 0.0;
  double y = 0.0;
  double width = 0.0;
  double height = 0.0;

  friend bool operator==(const BoxGeometry&, const BoxGeometry&) = default;
};

/// Quadrilateral in pixel coordinates (oriented-box annotations).
struct QuadGeometry {
  std::array<Point, 4> vertices{};

  friend bool operator==(const QuadGeometry&, const QuadGeometry&) = default;
};

using Geometry = std::variant<BoxGeometry, QuadGeometry>;

/// One annotated object. `area` is the pixel area of the annotated shape:
/// width x height for boxes, shoelace area for quadrilaterals.
struct ObjectInstance {
  std::string instance_id;
  std::string image_id;
  int class_id = 0;
  Geometry geometry;
  double area = 0.0;
  bool ignored = false;

  friend bool operator==(const ObjectInstance&, const ObjectInstance&) = default;
};

struct Dataset {
  std::vector<ObjectInstance> instances;  // sorted by instance_id
  std::map<int, std::string> categories;
  SourceFormat source_format = SourceFormat::synthetic;
  std::vector<std::string> provenance;
  // Parse-time diagnostics (zero-area records, self-intersecting quads, ...).
  // Not part of the data; excluded from equality and the canonical dump.
  std::vector<std::string> warnings;

  std::size_t retained_count() const {
    return static_cast<std::size_t>(
        std::count_if(instances.begin(), instances.end(),
                      [](const ObjectInstance& i) { return !i.ignored; }));
  }

  /// Sorts instances by instance_id and enforces the dataset invariants:
  /// unique ids, known class ids, positive area for every retained instance.
  void finalize() {
    std::sort(instances.begin(), instances.end(),
              [](const ObjectInstance& a, const ObjectInstance& b) {
                return a.instance_id < b.instance_id;
              });
    for (std::size_t i = 1; i < instances.size(); ++i) {
      if (instances[i].instance_id == instances[i - 1].instance_id) {
        throw DataError("duplicate instance_id '" + instances[i].instance_id +
                        "'");
      }
    }
    for (const ObjectInstance& inst : instances) {
      if (categories.find(inst.class_id) == categories.end()) {
        throw DataError("instance '" + inst.instance_id +
                        "' references unknown class_id " +
                        std::to_string(inst.class_id));
      }
      if (!inst.ignored && !(inst.area > 0.0)) {
        throw DataError("retained instance '" + inst.instance_id +
                        "' has non-positive area");
      }
    }
  }

  friend bool operator==(const Dataset& a, const Dataset& b) {
    return a.instances == b.instances && a.categories == b.categories &&
           a.source_format == b.source_format && a.provenance == b.provenance;
  }
};

}  // namespace aruba

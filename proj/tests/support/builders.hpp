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

#include <string>

#include "aruba/dataset.hpp"
#include "aruba/ingest/text_util.hpp"

namespace aruba::testing {

/// In-memory dataset builder for unit tests. Boxes are width = area,
/// height = 1, so the stored area equals the requested value exactly.
class DatasetBuilder {
 public:
  DatasetBuilder& add(int class_id, double area, bool ignored = false) {
    ObjectInstance inst;
    inst.instance_id = "t" + pad_number(counter_++, 6);
    inst.image_id = "img0";
    inst.class_id = class_id;
    inst.geometry = BoxGeometry{0.0, 0.0, area, 1.0};
    inst.area = area;
    inst.ignored = ignored;
    dataset_.instances.push_back(std::move(inst));
    if (dataset_.categories.find(class_id) == dataset_.categories.end()) {
      dataset_.categories[class_id] = "class_" + std::to_string(class_id);
    }
    return *this;
  }

  Dataset build() {
    Dataset out = dataset_;
    out.source_format = SourceFormat::synthetic;
    out.provenance = {"test-builder"};
    out.finalize();
    return out;
  }

 private:
  Dataset dataset_;
  int counter_ = 0;
};

}  // namespace aruba::testing

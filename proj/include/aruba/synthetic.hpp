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
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include <json.hpp>

#include "aruba/dataset.hpp"
#include "aruba/error.hpp"
#include "aruba/ingest/text_util.hpp"

namespace aruba {

/// Deterministic random source. mt19937_64 has a fully specified bit
/// stream, and all variate transforms are done here rather than with the
/// standard distributions (whose algorithms are implementation-defined), so
/// a seed pins the generated dataset.
class DeterministicRng {
 public:
  explicit DeterministicRng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform in [0, 1).
  double uniform01() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  /// Uniform in (0, 1].
  double uniform01_open_low() {
    return static_cast<double>((engine_() >> 11) + 1) * 0x1.0p-53;
  }

  /// Standard normal via Box-Muller.
  double normal() {
    const double u1 = uniform01_open_low();
    const double u2 = uniform01();
    return std::sqrt(-2.0 * std::log(u1)) *
           std::cos(2.0 * 3.14159265358979323846 * u2);
  }

 private:
  std::mt19937_64 engine_;
};

struct ClassSpec {
  enum class Law { log_normal, power_law };

  int class_id = 0;
  std::int64_t instance_count = 0;
  Law law = Law::log_normal;
  // log-normal parameters (of the area)
  double mu = 5.0;
  double sigma = 0.5;
  // power-law parameters: density proportional to area^(-exponent)
  double exponent = 2.0;
  double min_area = 1.0;
  double max_area = 1000.0;
};

struct SyntheticSpec {
  std::uint64_t seed = 7;
  int image_count = 64;
  double image_width = 2048.0;
  double image_height = 2048.0;
  std::vector<ClassSpec> classes;

  void validate() const {
    if (classes.empty()) {
      throw ConfigError("synthetic spec needs at least one class");
    }
    if (image_count < 1 || !(image_width > 0.0) || !(image_height > 0.0)) {
      throw ConfigError("synthetic spec has a degenerate image grid");
    }
    for (const ClassSpec& c : classes) {
      if (c.instance_count < 1) {
        throw ConfigError("class " + std::to_string(c.class_id) +
                          ": instance count must be positive");
      }
      if (c.law == ClassSpec::Law::log_normal) {
        if (!(c.sigma > 0.0) || !std::isfinite(c.mu)) {
          throw ConfigError("class " + std::to_string(c.class_id) +
                            ": degenerate log-normal parameters");
        }
      } else {
        if (!(c.min_area > 0.0) || !(c.max_area > c.min_area) ||
            !std::isfinite(c.exponent)) {
          throw ConfigError("class " + std::to_string(c.class_id) +
                            ": degenerate power-law parameters");
        }
      }
    }
  }

  /// The pinned long-tail preset: three classes, 10^4 instances, most of
  /// them small, a sparse power-law tail of large sizes.
  static SyntheticSpec default_long_tail() {
    SyntheticSpec spec;
    spec.seed = 7;
    ClassSpec small;
    small.class_id = 0;
    small.instance_count = 7000;
    small.law = ClassSpec::Law::log_normal;
    small.mu = 5.0;  // areas around 150 px^2
    small.sigma = 0.6;
    ClassSpec medium;
    medium.class_id = 1;
    medium.instance_count = 2500;
    medium.law = ClassSpec::Law::log_normal;
    medium.mu = 6.8;  // areas around 900 px^2
    medium.sigma = 0.8;
    ClassSpec large;
    large.class_id = 2;
    large.instance_count = 500;
    large.law = ClassSpec::Law::power_law;
    large.exponent = 2.0;
    large.min_area = 1000.0;
    large.max_area = 250000.0;
    spec.classes = {small, medium, large};
    return spec;
  }
};

namespace detail {

inline double sample_area(const ClassSpec& spec, DeterministicRng& rng) {
  if (spec.law == ClassSpec::Law::log_normal) {
    return std::exp(spec.mu + spec.sigma * rng.normal());
  }
  // Inverse CDF of density ~ x^-a on [lo, hi].
  const double u = rng.uniform01();
  if (spec.exponent == 1.0) {
    return spec.min_area * std::pow(spec.max_area / spec.min_area, u);
  }
  const double p = 1.0 - spec.exponent;
  const double lo_p = std::pow(spec.min_area, p);
  const double hi_p = std::pow(spec.max_area, p);
  return std::pow(lo_p + u * (hi_p - lo_p), 1.0 / p);
}

}  // namespace detail

/// Deterministic synthetic dataset with the requested per-class counts and
/// area laws. Instances are axis-aligned boxes with mild aspect jitter,
/// placed on a round-robin image grid.
inline Dataset generate_synthetic(const SyntheticSpec& spec) {
  spec.validate();

  Dataset dataset;
  dataset.source_format = SourceFormat::synthetic;
  dataset.provenance.push_back("synthetic:seed=" + std::to_string(spec.seed));
  DeterministicRng rng(spec.seed);

  for (const ClassSpec& cls : spec.classes) {
    dataset.categories[cls.class_id] =
        "synthetic_" + std::to_string(cls.class_id);
    for (std::int64_t i = 0; i < cls.instance_count; ++i) {
      double area = detail::sample_area(cls, rng);
      const double max_area = 0.25 * spec.image_width * spec.image_height;
      area = std::min(std::max(area, 1.0), max_area);

      const double aspect = std::exp(0.25 * rng.normal());
      double width = std::sqrt(area * aspect);
      double height = area / width;
      width = std::min(width, spec.image_width);
      height = std::min(height, spec.image_height);

      ObjectInstance inst;
      inst.instance_id = "c" + pad_number(cls.class_id, 3) + "-" +
                         pad_number(i, 7);
      const int image =
          static_cast<int>(i % static_cast<std::int64_t>(spec.image_count));
      inst.image_id = "img" + pad_number(image, 5);
      inst.class_id = cls.class_id;
      BoxGeometry box;
      box.width = width;
      box.height = height;
      box.x = rng.uniform01() * (spec.image_width - width);
      box.y = rng.uniform01() * (spec.image_height - height);
      inst.geometry = box;
      inst.area = box.width * box.height;
      dataset.instances.push_back(std::move(inst));
    }
  }

  dataset.finalize();
  return dataset;
}

inline nlohmann::json synthetic_spec_to_json(const SyntheticSpec& spec) {
  nlohmann::json doc;
  doc["seed"] = spec.seed;
  doc["image_count"] = spec.image_count;
  doc["image_width"] = spec.image_width;
  doc["image_height"] = spec.image_height;
  nlohmann::json classes = nlohmann::json::array();
  for (const ClassSpec& c : spec.classes) {
    nlohmann::json j;
    j["class_id"] = c.class_id;
    j["instance_count"] = c.instance_count;
    if (c.law == ClassSpec::Law::log_normal) {
      j["law"] = "log_normal";
      j["mu"] = c.mu;
      j["sigma"] = c.sigma;
    } else {
      j["law"] = "power_law";
      j["exponent"] = c.exponent;
      j["min_area"] = c.min_area;
      j["max_area"] = c.max_area;
    }
    classes.push_back(std::move(j));
  }
  doc["classes"] = std::move(classes);
  return doc;
}

inline SyntheticSpec parse_synthetic_spec(const std::string& json_text,
                                          const std::string& source_name =
                                              "<memory>") {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError("malformed JSON in " + source_name + " at byte " +
                     std::to_string(e.byte) + ": " + e.what());
  }
  SyntheticSpec spec;
  spec.seed = doc.value("seed", spec.seed);
  spec.image_count = doc.value("image_count", spec.image_count);
  spec.image_width = doc.value("image_width", spec.image_width);
  spec.image_height = doc.value("image_height", spec.image_height);
  if (!doc.contains("classes") || !doc["classes"].is_array()) {
    throw SchemaError("synthetic spec " + source_name +
                      " is missing required array 'classes'");
  }
  for (const auto& j : doc["classes"]) {
    ClassSpec c;
    if (!j.contains("class_id") || !j.contains("instance_count") ||
        !j.contains("law")) {
      throw SchemaError("synthetic class spec needs class_id, "
                        "instance_count and law");
    }
    c.class_id = j["class_id"].get<int>();
    c.instance_count = j["instance_count"].get<std::int64_t>();
    const std::string law = j["law"].get<std::string>();
    if (law == "log_normal") {
      c.law = ClassSpec::Law::log_normal;
      c.mu = j.value("mu", c.mu);
      c.sigma = j.value("sigma", c.sigma);
    } else if (law == "power_law") {
      c.law = ClassSpec::Law::power_law;
      c.exponent = j.value("exponent", c.exponent);
      c.min_area = j.value("min_area", c.min_area);
      c.max_area = j.value("max_area", c.max_area);
    } else {
      throw SchemaError("unknown area law '" + law + "' in " + source_name);
    }
    spec.classes.push_back(c);
  }
  spec.validate();
  return spec;
}

}  // namespace aruba

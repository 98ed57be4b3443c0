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
#include <cstdio>
#include <string>

#include "aruba/error.hpp"

namespace aruba {

/// Fixed 12-significant-digit rendering used by every golden-stable output
/// file. Non-finite values are a bug upstream and are rejected.
inline std::string format_sig(double value, int digits = 12) {
  if (!std::isfinite(value)) {
    throw DataError("refusing to serialize a non-finite number");
  }
  if (value == 0.0) return "0";  // normalizes -0 as well
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, value);
  return buf;
}

/// Shortest-faithful rendering (17 significant digits) for debug output.
inline std::string format_full(double value) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

/// RFC-4180 quoting for CSV fields that carry free-form text.
inline std::string csv_field(const std::string& value) {
  if (value.find_first_of(",\"\n\r") == std::string::npos) return value;
  std::string quoted = "\"";
  for (char c : value) {
    if (c == '"') quoted += '"';
    quoted += c;
  }
  quoted += '"';
  return quoted;
}

}  // namespace aruba

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

#include <array>
#include <cmath>
#include <span>

#include "aruba/error.hpp"

namespace aruba {

struct Point {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const Point&, const Point&) = default;
};

/// Absolute shoelace area of a simple polygon given by its vertices.
/// Orientation-independent; self-intersecting polygons yield the absolute
/// value of the signed sum, which is what the annotation formats expect.
inline double polygon_area(std::span<const Point> vertices) {
  if (vertices.size() < 3) {
    throw DataError("polygon_area: need at least 3 vertices, got " +
                    std::to_string(vertices.size()));
  }
  for (const Point& p : vertices) {
    if (!std::isfinite(p.x) || !std::isfinite(p.y)) {
      throw DataError("polygon_area: non-finite vertex coordinate");
    }
  }
  double twice_signed = 0.0;
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    const Point& a = vertices[i];
    const Point& b = vertices[(i + 1) % vertices.size()];
    twice_signed += a.x * b.y - b.x * a.y;
  }
  return std::abs(twice_signed) / 2.0;
}

inline double polygon_area(const std::array<Point, 4>& quad) {
  return polygon_area(std::span<const Point>(quad.data(), quad.size()));
}

namespace detail {

// Sign of the cross product (b-a) x (c-a).
inline int orientation(const Point& a, const Point& b, const Point& c) {
  const double cross = (b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x);
  if (cross > 0) return 1;
  if (cross < 0) return -1;
  return 0;
}

// Proper crossing only; shared endpoints and collinear touches do not count.
inline bool segments_cross(const Point& p1, const Point& p2, const Point& q1,
                           const Point& q2) {
  const int o1 = orientation(p1, p2, q1);
  const int o2 = orientation(p1, p2, q2);
  const int o3 = orientation(q1, q2, p1);
  const int o4 = orientation(q1, q2, p2);
  return o1 != 0 && o2 != 0 && o3 != 0 && o4 != 0 && o1 != o2 && o3 != o4;
}

}  // namespace detail

/// True when the quadrilateral's opposite edges cross ("bow-tie" vertex
/// order). Such quads occur in real annotation files; callers keep them but
/// record a warning.
inline bool quad_self_intersects(const std::array<Point, 4>& q) {
  return detail::segments_cross(q[0], q[1], q[2], q[3]) ||
         detail::segments_cross(q[1], q[2], q[3], q[0]);
}

}  // namespace aruba

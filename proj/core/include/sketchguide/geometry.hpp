// Copyright 2026 The Sketchguide Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#pragma once

#include <algorithm>

namespace sketchguide {

/// Sketch canvas edge in centimetres. Prompts fix the drawing area to a
/// 5.12 x 5.12 square, which maps to 512 px at 100 px/cm.
inline constexpr double kCanvasCm = 5.12;
inline constexpr double kDefaultScale = 100.0;
inline constexpr int kCanvasPx = 512;

/// 1 cm expressed in TeX points.
inline constexpr double kPtPerCm = 28.3465;

/// Sketch-space point in cm. TikZ convention: y grows upward.
struct Point {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const Point&, const Point&) = default;
};

struct Rect {
  Point min;
  Point max;

  double width() const { return max.x - min.x; }
  double height() const { return max.y - min.y; }

  static Rect from_corners(Point a, Point b) {
    return Rect{{std::min(a.x, b.x), std::min(a.y, b.y)},
                {std::max(a.x, b.x), std::max(a.y, b.y)}};
  }

  friend bool operator==(const Rect&, const Rect&) = default;
};

inline Rect default_canvas() { return Rect{{0.0, 0.0}, {kCanvasCm, kCanvasCm}}; }

}  // namespace sketchguide

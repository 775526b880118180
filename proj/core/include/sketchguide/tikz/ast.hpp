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

#include <optional>
#include <string>
#include <vector>

#include "sketchguide/error.hpp"
#include "sketchguide/geometry.hpp"

namespace sketchguide::tikz {

inline constexpr double kDefaultLineWidthPt = 0.4;

/// Geometry plus paint. Fill* kinds carry a fill colour (and may also carry a
/// stroke colour, e.g. `\draw[red, fill=red] ... circle`); Stroke* kinds are
/// outline-only.
enum class CommandKind {
  kFillCircle,
  kFillRect,
  kFillPolygon,
  kStrokePolyline,
  kStrokePolygon,
  kStrokeCircle,
  kStrokeRect,
};

const char* to_string(CommandKind kind);
bool is_filled(CommandKind kind);

struct Style {
  std::optional<std::string> stroke_color;
  std::optional<std::string> fill_color;
  double line_width_pt = kDefaultLineWidthPt;

  friend bool operator==(const Style&, const Style&) = default;
};

/// Points are in cm, TikZ orientation. Circles: points = {center}, radius in
/// cm. Rects: the two corners as written. Polygons: vertices without the
/// closing repeat.
struct SketchCommand {
  CommandKind kind = CommandKind::kFillPolygon;
  std::vector<Point> points;
  double radius = 0.0;
  Style style;

  friend bool operator==(const SketchCommand&, const SketchCommand&) = default;
};

struct SourceSpan {
  int line = 0;
  int column = 0;
  friend bool operator==(const SourceSpan&, const SourceSpan&) = default;
};

struct SketchProgram {
  Rect bounding_box = default_canvas();
  bool bounding_box_defaulted = true;
  std::vector<SketchCommand> commands;
  /// spans[i] is where commands[i] started in the source.
  std::vector<SourceSpan> spans;
  std::vector<Diagnostic> warnings;

  /// Structural identity: bounding box and command list. Spans, warnings and
  /// whether the box was defaulted are provenance, not structure.
  friend bool operator==(const SketchProgram& a, const SketchProgram& b) {
    return a.bounding_box == b.bounding_box && a.commands == b.commands;
  }
};

}  // namespace sketchguide::tikz

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

#include <span>
#include <string>
#include <vector>

#include "sketchguide/error.hpp"
#include "sketchguide/geometry.hpp"
#include "sketchguide/raster/bitmap.hpp"
#include "sketchguide/tikz/ast.hpp"

namespace sketchguide::raster {

/// Continuous pixel-space coordinate (y down). Pixel (i, j) covers
/// [i, i+1) x [j, j+1); its sample point is the centre (i+0.5, j+0.5).
struct PixelPoint {
  double x = 0.0;
  double y = 0.0;
};

using Ring = std::vector<PixelPoint>;

struct RasterOptions {
  double scale = kDefaultScale;  // px per cm
  int circle_segments = 64;
  std::string provenance;
};

struct RasterResult {
  SketchBitmap bitmap;
  std::vector<Diagnostic> warnings;
};

/// Evaluates a program into a binary bitmap of
/// round(scale * bbox.width) x round(scale * bbox.height) pixels. Vertices map
/// to px_x = round(scale * (x - x0)), px_y = height - round(scale * (y - y0)).
/// Fills use even-odd scanline filling, circles become regular polygons and
/// strokes are round-capped segments of stroke_width_px() pixels. Everything
/// is clipped to the canvas.
RasterResult rasterize(const tikz::SketchProgram& program, const RasterOptions& options = {});

/// max(1, round(line_width_pt * scale / 28.3465)).
int stroke_width_px(double line_width_pt, double scale);

/// Uniform scale plus centring pad taking a src_w x src_h image onto a
/// dst x dst canvas.
struct Letterbox {
  double scale = 1.0;
  double pad_x = 0.0;
  double pad_y = 0.0;
  int canvas = kCanvasPx;

  PixelPoint map(double x, double y) const { return {pad_x + scale * x, pad_y + scale * y}; }
};

Letterbox letterbox(double src_w, double src_h, int dst = kCanvasPx);

enum class PolygonMode { kFill, kOutline };

/// Rings in source-image pixels (y down, no flip). Each ring is filled
/// even-odd and the rings are unioned. Rings with fewer than 3 distinct
/// points are skipped with a DegeneratePolygon warning.
RasterResult render_polygons(std::span<const Ring> rings, double src_w, double src_h,
                             int dst = kCanvasPx, PolygonMode mode = PolygonMode::kFill,
                             std::string provenance = {});

// Drawing primitives, exposed for tests.
void fill_ring_even_odd(SketchBitmap& bitmap, const Ring& ring);
void stroke_segment(SketchBitmap& bitmap, PixelPoint a, PixelPoint b, double width_px);

}  // namespace sketchguide::raster

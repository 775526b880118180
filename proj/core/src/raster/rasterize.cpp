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
#include "sketchguide/raster/rasterize.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace sketchguide::raster {

namespace {

using tikz::CommandKind;
using tikz::SketchCommand;

int clamp_int(double v, int lo, int hi) {
  if (!(v > lo)) return lo;  // also catches NaN
  if (v > hi) return hi;
  return static_cast<int>(v);
}

double dist2_point_segment(PixelPoint p, PixelPoint a, PixelPoint b) {
  const double dx = b.x - a.x;
  const double dy = b.y - a.y;
  const double len2 = dx * dx + dy * dy;
  double t = 0.0;
  if (len2 > 0.0) t = std::clamp(((p.x - a.x) * dx + (p.y - a.y) * dy) / len2, 0.0, 1.0);
  const double ex = a.x + t * dx - p.x;
  const double ey = a.y + t * dy - p.y;
  return ex * ex + ey * ey;
}

double dist2_point_box(PixelPoint p, double x0, double y0, double x1, double y1) {
  const double dx = std::max({x0 - p.x, 0.0, p.x - x1});
  const double dy = std::max({y0 - p.y, 0.0, p.y - y1});
  return dx * dx + dy * dy;
}

// Liang-Barsky test of segment a-b against the closed box.
bool segment_hits_box(PixelPoint a, PixelPoint b, double x0, double y0, double x1, double y1) {
  double t0 = 0.0;
  double t1 = 1.0;
  const double dx = b.x - a.x;
  const double dy = b.y - a.y;
  const double p[4] = {-dx, dx, -dy, dy};
  const double q[4] = {a.x - x0, x1 - a.x, a.y - y0, y1 - a.y};
  for (int i = 0; i < 4; ++i) {
    if (p[i] == 0.0) {
      if (q[i] < 0.0) return false;
      continue;
    }
    const double r = q[i] / p[i];
    if (p[i] < 0.0) {
      t0 = std::max(t0, r);
    } else {
      t1 = std::min(t1, r);
    }
    if (t0 > t1) return false;
  }
  return true;
}

double dist2_segment_cell(PixelPoint a, PixelPoint b, int i, int j) {
  const double x0 = i, y0 = j, x1 = i + 1.0, y1 = j + 1.0;
  if (segment_hits_box(a, b, x0, y0, x1, y1)) return 0.0;
  double d = std::min(dist2_point_box(a, x0, y0, x1, y1), dist2_point_box(b, x0, y0, x1, y1));
  const PixelPoint corners[4] = {{x0, y0}, {x1, y0}, {x0, y1}, {x1, y1}};
  for (const auto& c : corners) d = std::min(d, dist2_point_segment(c, a, b));
  return d;
}

class ProgramRenderer {
 public:
  ProgramRenderer(const tikz::SketchProgram& program, const RasterOptions& options)
      : program_(program), options_(options) {
    width_ = static_cast<int>(std::round(options.scale * program.bounding_box.width()));
    height_ = static_cast<int>(std::round(options.scale * program.bounding_box.height()));
  }

  RasterResult run() {
    if (width_ <= 0 || height_ <= 0) {
      throw RasterError("EmptyCanvas", "bounding box maps to an empty canvas");
    }
    RasterResult result;
    result.bitmap = SketchBitmap(width_, height_, options_.provenance);
    if (program_.commands.empty() && program_.bounding_box_defaulted) {
      result.warnings.push_back(
          {"EmptyCanvas", "program has no bounding box and no drawing commands", 0, 0});
    }
    for (std::size_t i = 0; i < program_.commands.size(); ++i) {
      const auto& cmd = program_.commands[i];
      if (draw(result.bitmap, cmd)) {
        Diagnostic d{"Clipped", std::string(tikz::to_string(cmd.kind)) +
                                    " extends outside the canvas and was clipped"};
        if (i < program_.spans.size()) {
          d.line = program_.spans[i].line;
          d.column = program_.spans[i].column;
        }
        result.warnings.push_back(std::move(d));
      }
    }
    return result;
  }

 private:
  PixelPoint map_vertex(const Point& p) const {
    const Point& o = program_.bounding_box.min;
    return {std::round(options_.scale * (p.x - o.x)),
            height_ - std::round(options_.scale * (p.y - o.y))};
  }

  Ring circle_ring(const SketchCommand& cmd) const {
    const PixelPoint c = map_vertex(cmd.points.at(0));
    const double r = cmd.radius * options_.scale;
    const int n = std::max(3, options_.circle_segments);
    Ring ring;
    ring.reserve(static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k) {
      const double t = 2.0 * std::numbers::pi * k / n;
      ring.push_back({c.x + r * std::cos(t), c.y + r * std::sin(t)});
    }
    return ring;
  }

  Ring corner_ring(const SketchCommand& cmd) const {
    const PixelPoint a = map_vertex(cmd.points.at(0));
    const PixelPoint b = map_vertex(cmd.points.at(1));
    return {{a.x, a.y}, {b.x, a.y}, {b.x, b.y}, {a.x, b.y}};
  }

  Ring vertex_ring(const SketchCommand& cmd) const {
    Ring ring;
    ring.reserve(cmd.points.size());
    for (const auto& p : cmd.points) ring.push_back(map_vertex(p));
    return ring;
  }

  bool outside(const Ring& ring, double margin) const {
    for (const auto& p : ring) {
      if (p.x - margin < 0.0 || p.y - margin < 0.0 || p.x + margin > width_ ||
          p.y + margin > height_) {
        return true;
      }
    }
    return false;
  }

  void stroke_ring(SketchBitmap& bm, const Ring& ring, bool closed, double w) const {
    for (std::size_t k = 0; k + 1 < ring.size(); ++k) stroke_segment(bm, ring[k], ring[k + 1], w);
    if (closed && ring.size() > 2) stroke_segment(bm, ring.back(), ring.front(), w);
  }

  // Returns true when the shape was clipped.
  bool draw(SketchBitmap& bm, const SketchCommand& cmd) const {
    Ring ring;
    bool closed = true;
    switch (cmd.kind) {
      case CommandKind::kFillCircle:
      case CommandKind::kStrokeCircle:
        ring = circle_ring(cmd);
        break;
      case CommandKind::kFillRect:
      case CommandKind::kStrokeRect:
        ring = corner_ring(cmd);
        break;
      case CommandKind::kFillPolygon:
      case CommandKind::kStrokePolygon:
        ring = vertex_ring(cmd);
        break;
      case CommandKind::kStrokePolyline:
        ring = vertex_ring(cmd);
        closed = false;
        break;
    }
    const double w = stroke_width_px(cmd.style.line_width_pt, options_.scale);
    const bool stroked = cmd.style.stroke_color.has_value() || !tikz::is_filled(cmd.kind);
    if (tikz::is_filled(cmd.kind)) fill_ring_even_odd(bm, ring);
    if (stroked) stroke_ring(bm, ring, closed, w);
    return outside(ring, stroked ? w / 2.0 : 0.0);
  }

  const tikz::SketchProgram& program_;
  const RasterOptions& options_;
  int width_ = 0;
  int height_ = 0;
};

}  // namespace

int stroke_width_px(double line_width_pt, double scale) {
  const double px = std::round(line_width_pt * scale / kPtPerCm);
  return std::max(1, static_cast<int>(px));
}

void fill_ring_even_odd(SketchBitmap& bm, const Ring& ring) {
  if (ring.size() < 3) return;
  double ymin = ring[0].y;
  double ymax = ring[0].y;
  for (const auto& p : ring) {
    ymin = std::min(ymin, p.y);
    ymax = std::max(ymax, p.y);
  }
  const int j0 = clamp_int(std::floor(ymin), 0, bm.height);
  const int j1 = clamp_int(std::ceil(ymax), 0, bm.height);
  std::vector<double> xs;
  for (int j = j0; j < j1; ++j) {
    const double yc = j + 0.5;
    xs.clear();
    for (std::size_t k = 0; k < ring.size(); ++k) {
      const PixelPoint& p = ring[k];
      const PixelPoint& q = ring[(k + 1) % ring.size()];
      // Half-open rule so a vertex on the scanline is counted once.
      if ((p.y <= yc) != (q.y <= yc)) {
        xs.push_back(p.x + (yc - p.y) * (q.x - p.x) / (q.y - p.y));
      }
    }
    std::sort(xs.begin(), xs.end());
    for (std::size_t k = 0; k + 1 < xs.size(); k += 2) {
      const int i0 = clamp_int(std::ceil(xs[k] - 0.5), 0, bm.width);
      const int i1 = clamp_int(std::ceil(xs[k + 1] - 0.5), 0, bm.width);
      for (int i = i0; i < i1; ++i) bm.set(i, j);
    }
  }
}

// Inks every pixel whose cell comes within width/2 of the segment. Distance
// to the segment gives round caps.
void stroke_segment(SketchBitmap& bm, PixelPoint a, PixelPoint b, double width_px) {
  const double r = width_px / 2.0;
  const double r2 = r * r;
  const int i0 = clamp_int(std::floor(std::min(a.x, b.x) - r) - 1, 0, bm.width);
  const int i1 = clamp_int(std::ceil(std::max(a.x, b.x) + r) + 1, 0, bm.width);
  const int j0 = clamp_int(std::floor(std::min(a.y, b.y) - r) - 1, 0, bm.height);
  const int j1 = clamp_int(std::ceil(std::max(a.y, b.y) + r) + 1, 0, bm.height);
  for (int j = j0; j < j1; ++j) {
    for (int i = i0; i < i1; ++i) {
      if (dist2_segment_cell(a, b, i, j) < r2) bm.set(i, j);
    }
  }
}

RasterResult rasterize(const tikz::SketchProgram& program, const RasterOptions& options) {
  if (!(options.scale > 0.0) || !std::isfinite(options.scale)) {
    throw RasterError("InvalidScale", "raster scale must be positive and finite");
  }
  return ProgramRenderer(program, options).run();
}

Letterbox letterbox(double src_w, double src_h, int dst) {
  if (!(src_w > 0.0) || !(src_h > 0.0)) {
    throw RasterError("RenderError", "source image size must be positive");
  }
  Letterbox lb;
  lb.canvas = dst;
  lb.scale = dst / std::max(src_w, src_h);
  lb.pad_x = (dst - src_w * lb.scale) / 2.0;
  lb.pad_y = (dst - src_h * lb.scale) / 2.0;
  return lb;
}

RasterResult render_polygons(std::span<const Ring> rings, double src_w, double src_h, int dst,
                             PolygonMode mode, std::string provenance) {
  const Letterbox lb = letterbox(src_w, src_h, dst);
  RasterResult result;
  result.bitmap = SketchBitmap(dst, dst, std::move(provenance));
  for (std::size_t r = 0; r < rings.size(); ++r) {
    const Ring& src = rings[r];
    std::vector<PixelPoint> distinct;
    for (const auto& p : src) {
      bool seen = false;
      for (const auto& d : distinct) {
        if (d.x == p.x && d.y == p.y) seen = true;
      }
      if (!seen) distinct.push_back(p);
      if (distinct.size() >= 3) break;
    }
    if (distinct.size() < 3) {
      result.warnings.push_back({"DegeneratePolygon",
                                 "ring " + std::to_string(r) + " has fewer than 3 distinct points",
                                 0, 0});
      continue;
    }
    Ring mapped;
    mapped.reserve(src.size());
    for (const auto& p : src) mapped.push_back(lb.map(p.x, p.y));
    if (mode == PolygonMode::kFill) {
      fill_ring_even_odd(result.bitmap, mapped);
    } else {
      for (std::size_t k = 0; k < mapped.size(); ++k) {
        stroke_segment(result.bitmap, mapped[k], mapped[(k + 1) % mapped.size()], 1.0);
      }
    }
  }
  return result;
}

}  // namespace sketchguide::raster

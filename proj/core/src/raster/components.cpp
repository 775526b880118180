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
#include "sketchguide/raster/components.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <tuple>

namespace sketchguide::raster {

ComponentSet label_components(const SketchBitmap& bitmap) {
  ComponentSet out;
  out.width = bitmap.width;
  out.height = bitmap.height;
  out.labels.assign(bitmap.pixels.size(), 0);

  std::vector<std::size_t> stack;
  const std::size_t w = static_cast<std::size_t>(bitmap.width);
  for (std::size_t start = 0; start < bitmap.pixels.size(); ++start) {
    if (!bitmap.pixels[start] || out.labels[start]) continue;
    const int id = static_cast<int>(out.components.size()) + 1;
    Component comp;
    comp.id = id;
    int min_x = bitmap.width, min_y = bitmap.height, max_x = -1, max_y = -1;
    double sum_x = 0.0, sum_y = 0.0;

    out.labels[start] = id;
    stack.push_back(start);
    while (!stack.empty()) {
      const std::size_t idx = stack.back();
      stack.pop_back();
      const int x = static_cast<int>(idx % w);
      const int y = static_cast<int>(idx / w);
      ++comp.area_px;
      sum_x += x + 0.5;
      sum_y += y + 0.5;
      min_x = std::min(min_x, x);
      max_x = std::max(max_x, x);
      min_y = std::min(min_y, y);
      max_y = std::max(max_y, y);
      const int nx[4] = {x - 1, x + 1, x, x};
      const int ny[4] = {y, y, y - 1, y + 1};
      for (int k = 0; k < 4; ++k) {
        if (!bitmap.in_bounds(nx[k], ny[k])) continue;
        const std::size_t n = static_cast<std::size_t>(ny[k]) * w + static_cast<std::size_t>(nx[k]);
        if (bitmap.pixels[n] && !out.labels[n]) {
          out.labels[n] = id;
          stack.push_back(n);
        }
      }
    }
    comp.centroid_x = sum_x / static_cast<double>(comp.area_px);
    comp.centroid_y = sum_y / static_cast<double>(comp.area_px);
    comp.bbox = BoxPx{min_x, min_y, max_x - min_x + 1, max_y - min_y + 1};
    out.components.push_back(comp);
  }
  return out;
}

std::vector<Assignment> match_components(const ComponentSet& components,
                                         const GroundingSet& groundings, double scale) {
  const std::size_t ng = groundings.entries.size();
  const std::size_t nc = components.components.size();
  std::vector<Assignment> out(ng);
  for (std::size_t g = 0; g < ng; ++g) {
    out[g].grounding_index = g;
    out[g].distance_px = std::numeric_limits<double>::infinity();
  }

  struct Pair {
    double d;
    std::size_t g;
    std::size_t c;
  };
  std::vector<Pair> pairs;
  pairs.reserve(ng * nc);
  for (std::size_t g = 0; g < ng; ++g) {
    const auto& center = groundings.entries[g].center;
    const double tx = center.x * scale;
    const double ty = components.height - center.y * scale;
    for (std::size_t c = 0; c < nc; ++c) {
      const auto& comp = components.components[c];
      pairs.push_back({std::hypot(comp.centroid_x - tx, comp.centroid_y - ty), g, c});
    }
  }
  std::sort(pairs.begin(), pairs.end(), [](const Pair& a, const Pair& b) {
    return std::tie(a.d, a.g, a.c) < std::tie(b.d, b.g, b.c);
  });

  std::vector<bool> g_used(ng, false);
  std::vector<bool> c_used(nc, false);
  for (const auto& p : pairs) {
    if (g_used[p.g] || c_used[p.c]) continue;
    g_used[p.g] = true;
    c_used[p.c] = true;
    out[p.g].component_id = components.components[p.c].id;
    out[p.g].distance_px = p.d;
  }
  return out;
}

}  // namespace sketchguide::raster

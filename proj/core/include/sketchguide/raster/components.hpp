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

#include <cstddef>
#include <optional>
#include <vector>

#include "sketchguide/geometry.hpp"
#include "sketchguide/grounding.hpp"
#include "sketchguide/raster/bitmap.hpp"

namespace sketchguide::raster {

struct BoxPx {
  int x = 0;
  int y = 0;
  int w = 0;
  int h = 0;
  friend bool operator==(const BoxPx&, const BoxPx&) = default;
};

struct Component {
  int id = 0;
  std::size_t area_px = 0;
  // Mean of pixel centres (i + 0.5, j + 0.5), image coordinates.
  double centroid_x = 0.0;
  double centroid_y = 0.0;
  BoxPx bbox;
};

struct ComponentSet {
  int width = 0;
  int height = 0;
  std::vector<int> labels;  // row-major, 0 = background
  std::vector<Component> components;

  int label_at(int x, int y) const { return labels[static_cast<std::size_t>(y) * width + x]; }
};

/// 4-connected labelling; ids are 1..n in raster-scan order of each
/// component's first pixel.
ComponentSet label_components(const SketchBitmap& bitmap);

struct Assignment {
  std::size_t grounding_index = 0;
  std::optional<int> component_id;
  double distance_px = 0.0;  // +inf when unmatched
};

/// Greedy nearest-centroid matching between grounding centres (cm, y up,
/// mapped to (x * scale, height - y * scale)) and component centroids. All
/// pairs are taken in order of increasing distance, ties broken by grounding
/// index then component id; each grounding and each component is used at most
/// once. Result is indexed by grounding.
std::vector<Assignment> match_components(const ComponentSet& components,
                                         const GroundingSet& groundings,
                                         double scale = kDefaultScale);

}  // namespace sketchguide::raster

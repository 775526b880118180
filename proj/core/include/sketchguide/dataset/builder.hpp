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
#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "sketchguide/dataset/annotations.hpp"
#include "sketchguide/grounding.hpp"
#include "sketchguide/raster/rasterize.hpp"

namespace sketchguide::dataset {

struct TripletRecord {
  std::int64_t image_id = 0;
  std::string file_name;
  std::string caption;
  std::string sketch_path;  // relative to the output directory
  int src_width = 0;
  int src_height = 0;
  GroundingSet groundings;

  friend bool operator==(const TripletRecord&, const TripletRecord&) = default;
};

struct BuildOptions {
  std::size_t limit = 0;  // images, 0 = all
  bool all_captions = false;
  unsigned jobs = 1;
  raster::PolygonMode mode = raster::PolygonMode::kFill;
};

struct BuildReport {
  std::size_t images = 0;
  std::size_t rows = 0;
  std::size_t skipped = 0;
  std::vector<Diagnostic> errors;  // one per skipped image
  std::filesystem::path manifest;
};

/// Groundings for one image: instance bbox centres mapped through the
/// letterbox into sketch cm (y up). Sorted by area, largest first with ties
/// by annotation id, and cut to 30.
GroundingSet image_groundings(const ImageEntry& image, const AnnotationSource& src);

/// Sketch of every instance polygon of an image on a 512 x 512 canvas.
raster::RasterResult image_sketch(const ImageEntry& image,
                                  raster::PolygonMode mode = raster::PolygonMode::kFill);

/// Writes <out>/sketches/<12-digit id>.pgm and <out>/manifest.jsonl, rows in
/// image id order (then caption id). Output does not depend on jobs.
BuildReport build_triplets(const AnnotationSource& src, const std::filesystem::path& out_dir,
                           const BuildOptions& options = {});

nlohmann::ordered_json to_json(const TripletRecord& record);
TripletRecord triplet_from_json(const nlohmann::json& j);
std::vector<TripletRecord> read_manifest(const std::filesystem::path& path);

}  // namespace sketchguide::dataset

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

#include <array>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "sketchguide/error.hpp"
#include "sketchguide/raster/rasterize.hpp"

namespace sketchguide::dataset {

/// Message carries the JSON path of the offending field, e.g.
/// "lvis.json: $.annotations[3].bbox is missing".
class SchemaError : public Error {
 public:
  explicit SchemaError(const std::string& message) : Error("SchemaError", message) {}
};

class IdCollision : public Error {
 public:
  explicit IdCollision(const std::string& message) : Error("IdCollision", message) {}
};

struct ImageInfo {
  std::int64_t id = 0;
  std::string file_name;
  int width = 0;
  int height = 0;
};

struct CaptionAnnotation {
  std::int64_t id = 0;
  std::int64_t image_id = 0;
  std::string caption;
};

struct InstanceAnnotation {
  std::int64_t id = 0;
  std::int64_t image_id = 0;
  std::int64_t category_id = 0;
  std::vector<raster::Ring> segmentation;  // polygon rings, source pixels, y down
  std::array<double, 4> bbox{};            // x, y, w, h
  double area = 0.0;                        // annotation area, bbox area if absent
};

struct Category {
  std::int64_t id = 0;
  std::string name;
};

struct ImageEntry {
  ImageInfo info;
  std::vector<CaptionAnnotation> captions;    // ascending annotation id
  std::vector<InstanceAnnotation> instances;  // ascending annotation id
};

struct LoadReport {
  std::size_t images_seen = 0;
  std::size_t dropped_no_caption = 0;
  std::size_t dropped_no_instances = 0;
  std::size_t dropped_crowd = 0;
  std::size_t skipped_rle = 0;
  std::vector<Diagnostic> warnings;
};

/// Joined index keyed by image id. Only images with at least one caption and
/// one usable instance are kept.
struct AnnotationSource {
  std::map<std::int64_t, ImageEntry> images;
  std::map<std::int64_t, Category> categories;
  LoadReport report;

  const std::string& category_name(std::int64_t id) const;
};

/// Reads the COCO captions file and the LVIS instances file. Images are the
/// union of both "images" lists; LVIS image entries without file_name take
/// the basename of coco_url. Crowd and ignore instances are dropped, RLE
/// segmentations on other instances are skipped with a warning.
AnnotationSource load_annotations(const std::filesystem::path& coco_captions_path,
                                  const std::filesystem::path& lvis_path);

AnnotationSource load_annotations(const nlohmann::json& coco_captions, const nlohmann::json& lvis,
                                  const std::string& captions_label = "captions",
                                  const std::string& lvis_label = "lvis");

}  // namespace sketchguide::dataset

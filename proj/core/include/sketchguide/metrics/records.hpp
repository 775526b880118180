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
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "sketchguide/error.hpp"
#include "sketchguide/geometry.hpp"
#include "sketchguide/grounding.hpp"
#include "sketchguide/relation.hpp"

namespace sketchguide::metrics {

/// Codes: IncompleteGroup, MissingSpec, MissingGroundTruth, SchemaError.
class MetricsError : public Error {
 public:
  using Error::Error;
};

struct Detection {
  std::string label;
  double score = 0.0;
  std::array<double, 4> bbox{};  // x, y, w, h in pixels
};

struct DetectionRecord {
  std::string prompt_id;
  int sample_index = 0;
  std::vector<Detection> detections;
};

struct ObjectSpec {
  Point center;  // cm, y up
  Size2 size;    // cm
};

struct PromptGroundTruth {
  std::string prompt_id;
  std::string object_a;
  std::string object_b;
  Relation relation = Relation::kLeft;
  std::optional<std::array<ObjectSpec, 2>> spec;
};

/// Trim and lowercase.
std::string normalize_label(std::string_view label);

/// Clips the box to [0, canvas]^2; width and height never go negative.
std::array<double, 4> clamp_bbox(const std::array<double, 4>& bbox, double canvas = kCanvasPx);

DetectionRecord detection_from_json(const nlohmann::json& j);
PromptGroundTruth ground_truth_from_json(const nlohmann::json& j);
nlohmann::ordered_json to_json(const DetectionRecord& record);
nlohmann::ordered_json to_json(const PromptGroundTruth& gt);

/// JSONL readers; errors name the file and line.
std::vector<DetectionRecord> read_detections(const std::filesystem::path& path);
std::vector<PromptGroundTruth> read_ground_truth(const std::filesystem::path& path);

}  // namespace sketchguide::metrics

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
#include <span>

#include "sketchguide/metrics/visor.hpp"

namespace sketchguide::metrics {

struct PositionSizeOptions {
  double eps_frac = 0.039;
  double scale = kDefaultScale;  // px per cm
  bool euclidean = false;        // position test on the centre distance instead of per axis
  CorrectnessOptions correctness;
};

/// eps_frac * canvas (19.968 px at the defaults).
double tolerance_px(const PositionSizeOptions& options = {});

struct ObjectCheck {
  bool detected = false;
  bool pos_ok = false;
  bool size_ok = false;
};

/// Targets come from the spec: centre (x * scale, canvas - y * scale), size
/// (w * scale, h * scale). Throws MissingSpec.
std::array<ObjectCheck, 2> check_image(const DetectionRecord& record, const PromptGroundTruth& gt,
                                       const PositionSizeOptions& options = {});

/// Rates over images; All columns are intersections across both objects.
struct PositionSizeTable {
  std::size_t images = 0;
  double obj1_pos = 0.0;
  double obj1_size = 0.0;
  double obj2_pos = 0.0;
  double obj2_size = 0.0;
  double all_pos = 0.0;
  double all_size = 0.0;
  double pos_and_size = 0.0;
};

/// Every record needs a ground truth (MissingGroundTruth) with a spec
/// (MissingSpec).
PositionSizeTable position_size(std::span<const DetectionRecord> records,
                                std::span<const PromptGroundTruth> gts,
                                const PositionSizeOptions& options = {});

}  // namespace sketchguide::metrics

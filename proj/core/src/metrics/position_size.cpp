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
#include "sketchguide/metrics/position_size.hpp"

#include <cmath>
#include <map>
#include <string>

namespace sketchguide::metrics {

double tolerance_px(const PositionSizeOptions& options) {
  return options.eps_frac * options.correctness.canvas;
}

std::array<ObjectCheck, 2> check_image(const DetectionRecord& record, const PromptGroundTruth& gt,
                                       const PositionSizeOptions& options) {
  if (!gt.spec) {
    throw MetricsError("MissingSpec", "prompt '" + gt.prompt_id + "' has no position/size spec");
  }
  const double tol = tolerance_px(options);
  const double canvas = options.correctness.canvas;
  std::array<ObjectCheck, 2> out;
  const std::string* names[2] = {&gt.object_a, &gt.object_b};
  for (std::size_t i = 0; i < 2; ++i) {
    const auto det = best_detection(record, *names[i], options.correctness);
    if (!det) continue;
    const ObjectSpec& s = (*gt.spec)[i];
    const double tx = s.center.x * options.scale;
    const double ty = canvas - s.center.y * options.scale;
    const double tw = s.size.w * options.scale;
    const double th = s.size.h * options.scale;
    const double dx = std::abs(det->bbox[0] + det->bbox[2] / 2.0 - tx);
    const double dy = std::abs(det->bbox[1] + det->bbox[3] / 2.0 - ty);
    out[i].detected = true;
    out[i].pos_ok = options.euclidean ? std::hypot(dx, dy) <= tol : (dx <= tol && dy <= tol);
    out[i].size_ok = std::abs(det->bbox[2] - tw) <= tol && std::abs(det->bbox[3] - th) <= tol;
  }
  return out;
}

PositionSizeTable position_size(std::span<const DetectionRecord> records,
                                std::span<const PromptGroundTruth> gts,
                                const PositionSizeOptions& options) {
  std::map<std::string, const PromptGroundTruth*> by_id;
  for (const auto& g : gts) by_id.emplace(g.prompt_id, &g);
  std::array<std::size_t, 7> hits{};
  PositionSizeTable t;
  for (const auto& r : records) {
    auto it = by_id.find(r.prompt_id);
    if (it == by_id.end()) {
      throw MetricsError("MissingGroundTruth", "no ground truth for prompt '" + r.prompt_id + "'");
    }
    const auto c = check_image(r, *it->second, options);
    ++t.images;
    hits[0] += c[0].pos_ok;
    hits[1] += c[0].size_ok;
    hits[2] += c[1].pos_ok;
    hits[3] += c[1].size_ok;
    hits[4] += c[0].pos_ok && c[1].pos_ok;
    hits[5] += c[0].size_ok && c[1].size_ok;
    hits[6] += c[0].pos_ok && c[1].pos_ok && c[0].size_ok && c[1].size_ok;
  }
  if (t.images == 0) return t;
  const double n = static_cast<double>(t.images);
  t.obj1_pos = hits[0] / n;
  t.obj1_size = hits[1] / n;
  t.obj2_pos = hits[2] / n;
  t.obj2_size = hits[3] / n;
  t.all_pos = hits[4] / n;
  t.all_size = hits[5] / n;
  t.pos_and_size = hits[6] / n;
  return t;
}

}  // namespace sketchguide::metrics

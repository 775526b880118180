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

#include <Eigen/Core>

#include "sketchguide/geometry.hpp"

namespace sketchguide::control {

struct FourierConfig {
  int dim = 16;
  int bands = 4;
  double normalizer = kCanvasCm;
};

/// u = x / normalizer, v = y / normalizer; for b = 0..bands-1 the output holds
/// sin(2^b pi u), cos(2^b pi u), sin(2^b pi v), cos(2^b pi v) in that order.
/// Throws Error("InvalidConfig") unless dim == 4 * bands.
Eigen::VectorXd fourier_embed(const Point& center, const FourierConfig& cfg = {});

}  // namespace sketchguide::control

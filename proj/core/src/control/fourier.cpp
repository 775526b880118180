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
#include "sketchguide/control/fourier.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "sketchguide/error.hpp"

namespace sketchguide::control {

Eigen::VectorXd fourier_embed(const Point& center, const FourierConfig& cfg) {
  if (cfg.bands <= 0 || cfg.dim != 4 * cfg.bands || !(cfg.normalizer > 0.0)) {
    throw Error("InvalidConfig", "Fourier dim must equal 4 * bands, got dim " +
                                     std::to_string(cfg.dim) + " and " +
                                     std::to_string(cfg.bands) + " bands");
  }
  const double u = center.x / cfg.normalizer;
  const double v = center.y / cfg.normalizer;
  Eigen::VectorXd out(cfg.dim);
  double freq = std::numbers::pi;
  for (int b = 0; b < cfg.bands; ++b) {
    out[4 * b + 0] = std::sin(freq * u);
    out[4 * b + 1] = std::cos(freq * u);
    out[4 * b + 2] = std::sin(freq * v);
    out[4 * b + 3] = std::cos(freq * v);
    freq *= 2.0;
  }
  return out;
}

}  // namespace sketchguide::control

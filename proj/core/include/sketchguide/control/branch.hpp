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
#include <string>
#include <vector>

#include <Eigen/Core>

#include "sketchguide/control/fusion.hpp"
#include "sketchguide/raster/bitmap.hpp"

namespace sketchguide::control {

/// Feature map, layout [(y * w + x) * c + channel].
struct Tensor3 {
  int h = 0;
  int w = 0;
  int c = 0;
  std::vector<double> data;

  Tensor3() = default;
  Tensor3(int h_, int w_, int c_, double fill = 0.0)
      : h(h_), w(w_), c(c_), data(static_cast<std::size_t>(h_) * w_ * c_, fill) {}
  double& at(int y, int x, int ch) { return data[(static_cast<std::size_t>(y) * w + x) * c + ch]; }
  double at(int y, int x, int ch) const {
    return data[(static_cast<std::size_t>(y) * w + x) * c + ch];
  }
  bool all_zero() const;
  friend bool operator==(const Tensor3&, const Tensor3&) = default;
};

/// Same-padded k x k convolution, weight layout [((o * in + i) * k + dy) * k + dx].
struct Conv2d {
  int in_c = 0;
  int out_c = 0;
  int k = 1;
  std::vector<double> weight;
  std::vector<double> bias;

  Conv2d() = default;
  Conv2d(int in, int out, int kernel);
  double& w(int o, int i, int dy, int dx) {
    return weight[((static_cast<std::size_t>(o) * in_c + i) * k + dy) * k + dx];
  }
  Tensor3 forward(const Tensor3& x) const;
  void init_random(std::uint64_t seed);
};

struct StageSpec {
  std::string name;
  int resolution = 0;
  int n_blocks = 0;
};

/// Encoder blocks 1-4 and the middle block: 64/32/16/8/8 with 3, 3, 3, 3 and
/// 1 blocks.
const std::vector<StageSpec>& control_stage_table();

struct BranchConfig {
  std::vector<int> widths{8, 16, 32, 64, 64};
  int d_model = kModelDim;
  int patch = 8;
  int input_resolution = 64;
  int attention_dim = 32;
  std::uint64_t seed = 1;
};

/// Toy control branch: sketch tokens attend jointly with grounding tokens,
/// the attended image tokens are added to a conv stem, then conv stages
/// follow the stage table and each stage ends in a zero-initialized 1x1
/// convolution producing that stage's residual.
class ToyControlBranch {
 public:
  explicit ToyControlBranch(BranchConfig config = {});

  const BranchConfig& config() const { return config_; }
  const std::vector<StageSpec>& stages() const { return stages_; }

  /// (input_resolution / patch)^2 tokens of width d_model. Throws
  /// ShapeMismatch when the sketch side is not a multiple of
  /// input_resolution or the sketch is not square.
  Eigen::MatrixXd image_tokens(const raster::SketchBitmap& sketch) const;

  /// Fused tokens for a sketch plus groundings.
  ControlTokens prepare(const raster::SketchBitmap& sketch, const GroundingSet& groundings,
                        const TokenFusion& fusion) const;

  /// One residual per stage. tokens.image_tokens must hold the patch grid
  /// of this branch and tokens.fused the same width.
  std::vector<Tensor3> forward(const raster::SketchBitmap& sketch,
                               const ControlTokens& tokens) const;

  Conv2d& zero_conv(std::size_t stage) { return zero_convs_.at(stage); }
  const Conv2d& zero_conv(std::size_t stage) const { return zero_convs_.at(stage); }

 private:
  Tensor3 downsample_sketch(const raster::SketchBitmap& sketch) const;
  Eigen::MatrixXd attend(const ControlTokens& tokens) const;

  BranchConfig config_;
  std::vector<StageSpec> stages_;
  Eigen::MatrixXd patch_proj_;  // d_model x patch^2
  Eigen::MatrixXd wq_;          // d_model x attention_dim
  Eigen::MatrixXd wk_;
  Eigen::MatrixXd token_out_;   // d_model x widths[0]
  Conv2d stem_;
  std::vector<std::vector<Conv2d>> blocks_;
  std::vector<Conv2d> zero_convs_;
};

/// Stand-in for the frozen backbone: fixed pseudo-random features per stage
/// that residuals are added to.
class StubBackbone {
 public:
  StubBackbone(const ToyControlBranch& branch, std::uint64_t seed);
  const std::vector<Tensor3>& features() const { return features_; }
  std::vector<Tensor3> combine(const std::vector<Tensor3>& residuals) const;

 private:
  std::vector<Tensor3> features_;
};

}  // namespace sketchguide::control

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
#include <memory>
#include <vector>

#include <Eigen/Core>

#include "sketchguide/control/fourier.hpp"
#include "sketchguide/control/name_embedding.hpp"
#include "sketchguide/grounding.hpp"

namespace sketchguide::control {

struct ControlTokens {
  Eigen::MatrixXd grounding_tokens;  // one row per grounding, then padding rows
  Eigen::MatrixXd image_tokens;
  Eigen::MatrixXd fused;             // grounding rows on top of image rows
  std::vector<std::uint8_t> mask;    // per fused row, 1 = attend, 0 = padding

  Eigen::Index grounding_rows() const { return grounding_tokens.rows(); }
  Eigen::Index image_rows() const { return image_tokens.rows(); }
};

/// token = P * concat(fourier(center), name(name)); P is d_model x
/// (fourier dim + name dim) without bias, drawn N(0, 1/fan_in) from a seed.
class TokenFusion {
 public:
  explicit TokenFusion(std::uint64_t seed = 7, FourierConfig fourier = {},
                       std::shared_ptr<const NameEmbedder> names = nullptr,
                       int d_model = kModelDim);

  int d_model() const { return static_cast<int>(projection_.rows()); }
  int input_dim() const { return static_cast<int>(projection_.cols()); }

  Eigen::VectorXd features(const GroundingEntry& entry) const;
  Eigen::VectorXd token(const GroundingEntry& entry) const;

  /// Throws TooManyGroundings above 30 entries and ShapeMismatch when
  /// image_tokens is not n x d_model. With pad_to > size the grounding block
  /// is padded with zero rows whose mask entry is 0.
  ControlTokens fuse(const GroundingSet& groundings, const Eigen::MatrixXd& image_tokens,
                     std::size_t pad_to = 0) const;

  Eigen::MatrixXd& projection() { return projection_; }
  const Eigen::MatrixXd& projection() const { return projection_; }

 private:
  FourierConfig fourier_;
  std::shared_ptr<const NameEmbedder> names_;
  Eigen::MatrixXd projection_;
};

}  // namespace sketchguide::control

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
#include "sketchguide/control/fusion.hpp"

#include <cmath>
#include <string>

namespace sketchguide::control {

TokenFusion::TokenFusion(std::uint64_t seed, FourierConfig fourier,
                         std::shared_ptr<const NameEmbedder> names, int d_model)
    : fourier_(fourier), names_(std::move(names)) {
  if (!names_) names_ = std::make_shared<SeededNameEmbedder>();
  if (d_model <= 0) throw Error("InvalidConfig", "d_model must be positive");
  const int in = fourier_.dim + names_->dim();
  projection_.resize(d_model, in);
  GaussianStream g(seed);
  const double scale = 1.0 / std::sqrt(static_cast<double>(in));
  for (int r = 0; r < d_model; ++r) {
    for (int c = 0; c < in; ++c) projection_(r, c) = scale * g.next();
  }
}

Eigen::VectorXd TokenFusion::features(const GroundingEntry& entry) const {
  const Eigen::VectorXd f = fourier_embed(entry.center, fourier_);
  const Eigen::VectorXd n = names_->embed(entry.name);
  Eigen::VectorXd out(f.size() + n.size());
  out << f, n;
  return out;
}

Eigen::VectorXd TokenFusion::token(const GroundingEntry& entry) const {
  return projection_ * features(entry);
}

ControlTokens TokenFusion::fuse(const GroundingSet& groundings, const Eigen::MatrixXd& image_tokens,
                                std::size_t pad_to) const {
  validate(groundings);
  if (image_tokens.size() > 0 && image_tokens.cols() != d_model()) {
    throw Error("ShapeMismatch", "image tokens have " + std::to_string(image_tokens.cols()) +
                                     " columns, expected " + std::to_string(d_model()));
  }
  if (pad_to > kMaxGroundings) {
    throw GroundingError("TooManyGroundings", "cannot pad grounding tokens beyond 30");
  }
  const Eigen::Index n = static_cast<Eigen::Index>(groundings.size());
  const Eigen::Index rows = std::max<Eigen::Index>(n, static_cast<Eigen::Index>(pad_to));
  ControlTokens out;
  out.grounding_tokens = Eigen::MatrixXd::Zero(rows, d_model());
  for (Eigen::Index i = 0; i < n; ++i) {
    out.grounding_tokens.row(i) = token(groundings.entries[static_cast<std::size_t>(i)]).transpose();
  }
  out.image_tokens = image_tokens.size() > 0 ? image_tokens : Eigen::MatrixXd(0, d_model());
  out.fused.resize(rows + out.image_tokens.rows(), d_model());
  out.fused.topRows(rows) = out.grounding_tokens;
  out.fused.bottomRows(out.image_tokens.rows()) = out.image_tokens;
  out.mask.assign(static_cast<std::size_t>(out.fused.rows()), 1);
  for (Eigen::Index i = n; i < rows; ++i) out.mask[static_cast<std::size_t>(i)] = 0;
  return out;
}

}  // namespace sketchguide::control

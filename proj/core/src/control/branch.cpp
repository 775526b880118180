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
#include "sketchguide/control/branch.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace sketchguide::control {

namespace {

[[noreturn]] void shape_error(const std::string& msg) { throw Error("ShapeMismatch", msg); }

double silu(double x) { return x / (1.0 + std::exp(-x)); }

void apply_silu(Tensor3& t) {
  for (double& v : t.data) v = silu(v);
}

Tensor3 avg_pool2(const Tensor3& x) {
  Tensor3 out(x.h / 2, x.w / 2, x.c);
  for (int y = 0; y < out.h; ++y) {
    for (int xx = 0; xx < out.w; ++xx) {
      for (int ch = 0; ch < x.c; ++ch) {
        out.at(y, xx, ch) = 0.25 * (x.at(2 * y, 2 * xx, ch) + x.at(2 * y, 2 * xx + 1, ch) +
                                    x.at(2 * y + 1, 2 * xx, ch) + x.at(2 * y + 1, 2 * xx + 1, ch));
      }
    }
  }
  return out;
}

Eigen::MatrixXd seeded_matrix(GaussianStream& g, int rows, int cols) {
  Eigen::MatrixXd m(rows, cols);
  const double s = 1.0 / std::sqrt(static_cast<double>(cols));
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) m(r, c) = s * g.next();
  }
  return m;
}

}  // namespace

bool Tensor3::all_zero() const {
  return std::all_of(data.begin(), data.end(), [](double v) { return v == 0.0; });
}

Conv2d::Conv2d(int in, int out, int kernel)
    : in_c(in),
      out_c(out),
      k(kernel),
      weight(static_cast<std::size_t>(in) * out * kernel * kernel, 0.0),
      bias(static_cast<std::size_t>(out), 0.0) {}

void Conv2d::init_random(std::uint64_t seed) {
  GaussianStream g(seed);
  const double s = 1.0 / std::sqrt(static_cast<double>(in_c * k * k));
  for (double& v : weight) v = s * g.next();
  for (double& v : bias) v = 0.1 * g.next();
}

Tensor3 Conv2d::forward(const Tensor3& x) const {
  if (x.c != in_c) {
    shape_error("conv expects " + std::to_string(in_c) + " channels, got " + std::to_string(x.c));
  }
  Tensor3 out(x.h, x.w, out_c);
  const int r = k / 2;
  for (int y = 0; y < x.h; ++y) {
    for (int xx = 0; xx < x.w; ++xx) {
      for (int o = 0; o < out_c; ++o) {
        double acc = bias[static_cast<std::size_t>(o)];
        for (int dy = 0; dy < k; ++dy) {
          const int sy = y + dy - r;
          if (sy < 0 || sy >= x.h) continue;
          for (int dx = 0; dx < k; ++dx) {
            const int sx = xx + dx - r;
            if (sx < 0 || sx >= x.w) continue;
            const double* src = &x.data[(static_cast<std::size_t>(sy) * x.w + sx) * x.c];
            const double* wt = &weight[(static_cast<std::size_t>(o) * in_c * k + dy) * k + dx];
            for (int i = 0; i < in_c; ++i) acc += wt[static_cast<std::size_t>(i) * k * k] * src[i];
          }
        }
        out.at(y, xx, o) = acc;
      }
    }
  }
  return out;
}

const std::vector<StageSpec>& control_stage_table() {
  static const std::vector<StageSpec> table = {
      {"SD Encoder Block_1", 64, 3}, {"SD Encoder Block_2", 32, 3}, {"SD Encoder Block_3", 16, 3},
      {"SD Encoder Block_4", 8, 3},  {"SD Middle Block", 8, 1}};
  return table;
}

ToyControlBranch::ToyControlBranch(BranchConfig config)
    : config_(std::move(config)), stages_(control_stage_table()) {
  if (config_.widths.size() != stages_.size()) {
    shape_error("branch needs " + std::to_string(stages_.size()) + " channel widths, got " +
                std::to_string(config_.widths.size()));
  }
  for (int w : config_.widths) {
    if (w <= 0) shape_error("channel widths must be positive");
  }
  if (config_.input_resolution != stages_.front().resolution) {
    shape_error("input resolution must match the first stage (" +
                std::to_string(stages_.front().resolution) + ")");
  }
  if (config_.patch <= 0 || config_.input_resolution % config_.patch != 0) {
    shape_error("patch size must divide the input resolution");
  }
  if (config_.d_model <= 0 || config_.attention_dim <= 0) {
    shape_error("d_model and attention_dim must be positive");
  }

  GaussianStream g(config_.seed);
  patch_proj_ = seeded_matrix(g, config_.d_model, config_.patch * config_.patch);
  wq_ = seeded_matrix(g, config_.attention_dim, config_.d_model).transpose();
  wk_ = seeded_matrix(g, config_.attention_dim, config_.d_model).transpose();
  token_out_ = seeded_matrix(g, config_.widths[0], config_.d_model).transpose();

  std::uint64_t sub = config_.seed * 1000003u + 17u;
  stem_ = Conv2d(1, config_.widths[0], 3);
  stem_.init_random(sub++);
  int in = config_.widths[0];
  for (std::size_t s = 0; s < stages_.size(); ++s) {
    std::vector<Conv2d> blocks;
    for (int b = 0; b < stages_[s].n_blocks; ++b) {
      Conv2d conv(in, config_.widths[s], 3);
      conv.init_random(sub++);
      blocks.push_back(std::move(conv));
      in = config_.widths[s];
    }
    blocks_.push_back(std::move(blocks));
    zero_convs_.emplace_back(config_.widths[s], config_.widths[s], 1);
  }
}

Tensor3 ToyControlBranch::downsample_sketch(const raster::SketchBitmap& sketch) const {
  const int res = config_.input_resolution;
  if (sketch.width != sketch.height || sketch.width <= 0 || sketch.width % res != 0) {
    shape_error("sketch of " + std::to_string(sketch.width) + "x" + std::to_string(sketch.height) +
                " cannot be pooled to " + std::to_string(res) + "x" + std::to_string(res));
  }
  const int f = sketch.width / res;
  Tensor3 out(res, res, 1);
  const double inv = 1.0 / (f * f);
  for (int y = 0; y < res; ++y) {
    for (int x = 0; x < res; ++x) {
      int sum = 0;
      for (int dy = 0; dy < f; ++dy) {
        for (int dx = 0; dx < f; ++dx) sum += sketch.at(x * f + dx, y * f + dy);
      }
      out.at(y, x, 0) = sum * inv;
    }
  }
  return out;
}

Eigen::MatrixXd ToyControlBranch::image_tokens(const raster::SketchBitmap& sketch) const {
  const Tensor3 small = downsample_sketch(sketch);
  const int p = config_.patch;
  const int grid = config_.input_resolution / p;
  Eigen::MatrixXd patches(grid * grid, p * p);
  for (int gy = 0; gy < grid; ++gy) {
    for (int gx = 0; gx < grid; ++gx) {
      for (int dy = 0; dy < p; ++dy) {
        for (int dx = 0; dx < p; ++dx) {
          patches(gy * grid + gx, dy * p + dx) = small.at(gy * p + dy, gx * p + dx, 0);
        }
      }
    }
  }
  return patches * patch_proj_.transpose();
}

ControlTokens ToyControlBranch::prepare(const raster::SketchBitmap& sketch,
                                        const GroundingSet& groundings,
                                        const TokenFusion& fusion) const {
  if (fusion.d_model() != config_.d_model) {
    shape_error("fusion width " + std::to_string(fusion.d_model()) + " != branch width " +
                std::to_string(config_.d_model));
  }
  return fusion.fuse(groundings, image_tokens(sketch));
}

// Single-head attention over all fused tokens with padding masked out; only
// the image rows are returned, with a residual connection.
Eigen::MatrixXd ToyControlBranch::attend(const ControlTokens& tokens) const {
  const Eigen::MatrixXd& x = tokens.fused;
  const Eigen::MatrixXd q = x * wq_;
  const Eigen::MatrixXd k = x * wk_;
  Eigen::MatrixXd scores = (q * k.transpose()) / std::sqrt(static_cast<double>(config_.attention_dim));
  for (Eigen::Index r = 0; r < scores.rows(); ++r) {
    double m = -std::numeric_limits<double>::infinity();
    for (Eigen::Index c = 0; c < scores.cols(); ++c) {
      if (tokens.mask[static_cast<std::size_t>(c)]) m = std::max(m, scores(r, c));
    }
    double sum = 0.0;
    for (Eigen::Index c = 0; c < scores.cols(); ++c) {
      const double e = tokens.mask[static_cast<std::size_t>(c)] ? std::exp(scores(r, c) - m) : 0.0;
      scores(r, c) = e;
      sum += e;
    }
    scores.row(r) /= sum;
  }
  const Eigen::Index n_img = tokens.image_rows();
  return x.bottomRows(n_img) + scores.bottomRows(n_img) * x;
}

std::vector<Tensor3> ToyControlBranch::forward(const raster::SketchBitmap& sketch,
                                               const ControlTokens& tokens) const {
  const int grid = config_.input_resolution / config_.patch;
  if (tokens.image_rows() != static_cast<Eigen::Index>(grid) * grid) {
    shape_error("expected " + std::to_string(grid * grid) + " image tokens, got " +
                std::to_string(tokens.image_rows()));
  }
  if (tokens.fused.cols() != config_.d_model ||
      tokens.fused.rows() != tokens.grounding_rows() + tokens.image_rows() ||
      tokens.mask.size() != static_cast<std::size_t>(tokens.fused.rows())) {
    shape_error("control tokens are inconsistent with a " + std::to_string(config_.d_model) +
                "-wide branch");
  }

  const Eigen::MatrixXd attended = attend(tokens);
  const Eigen::MatrixXd token_feat = attended * token_out_;  // grid^2 x widths[0]

  Tensor3 h = stem_.forward(downsample_sketch(sketch));
  const int up = config_.input_resolution / grid;
  for (int y = 0; y < h.h; ++y) {
    for (int x = 0; x < h.w; ++x) {
      const Eigen::Index t = (y / up) * grid + (x / up);
      for (int ch = 0; ch < h.c; ++ch) h.at(y, x, ch) += token_feat(t, ch);
    }
  }
  apply_silu(h);

  std::vector<Tensor3> residuals;
  for (std::size_t s = 0; s < stages_.size(); ++s) {
    while (h.h > stages_[s].resolution) h = avg_pool2(h);
    for (const auto& conv : blocks_[s]) {
      h = conv.forward(h);
      apply_silu(h);
    }
    residuals.push_back(zero_convs_[s].forward(h));
  }
  return residuals;
}

StubBackbone::StubBackbone(const ToyControlBranch& branch, std::uint64_t seed) {
  GaussianStream g(seed);
  const auto& stages = branch.stages();
  for (std::size_t s = 0; s < stages.size(); ++s) {
    Tensor3 t(stages[s].resolution, stages[s].resolution, branch.config().widths[s]);
    for (double& v : t.data) v = g.next();
    features_.push_back(std::move(t));
  }
}

std::vector<Tensor3> StubBackbone::combine(const std::vector<Tensor3>& residuals) const {
  if (residuals.size() != features_.size()) shape_error("residual count does not match backbone");
  std::vector<Tensor3> out = features_;
  for (std::size_t s = 0; s < out.size(); ++s) {
    if (residuals[s].data.size() != out[s].data.size()) {
      shape_error("residual " + std::to_string(s) + " does not match backbone stage shape");
    }
    for (std::size_t i = 0; i < out[s].data.size(); ++i) out[s].data[i] += residuals[s].data[i];
  }
  return out;
}

}  // namespace sketchguide::control

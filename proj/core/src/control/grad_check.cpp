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
#include "sketchguide/control/grad_check.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace sketchguide::control {

namespace {

void check_1x1(const Conv2d& layer) {
  if (layer.k != 1) throw Error("ShapeMismatch", "zero-conv gradient check needs a 1x1 kernel");
}

}  // namespace

ZeroConvProblem::ZeroConvProblem(Conv2d layer, Tensor3 input, Tensor3 target)
    : layer_(std::move(layer)), input_(std::move(input)), target_(std::move(target)) {
  check_1x1(layer_);
  if (input_.c != layer_.in_c || target_.c != layer_.out_c || input_.h != target_.h ||
      input_.w != target_.w) {
    throw Error("ShapeMismatch", "zero-conv problem shapes do not agree");
  }
}

std::size_t ZeroConvProblem::num_params() const { return layer_.weight.size() + layer_.bias.size(); }

double& ZeroConvProblem::param(std::size_t i) {
  return i < layer_.weight.size() ? layer_.weight[i] : layer_.bias.at(i - layer_.weight.size());
}

double ZeroConvProblem::loss() const {
  const Tensor3 y = layer_.forward(input_);
  double l = 0.0;
  for (std::size_t i = 0; i < y.data.size(); ++i) {
    const double d = y.data[i] - target_.data[i];
    l += d * d;
  }
  return l;
}

std::vector<double> ZeroConvProblem::gradient() const {
  Tensor3 g = layer_.forward(input_);
  for (std::size_t i = 0; i < g.data.size(); ++i) g.data[i] = 2.0 * (g.data[i] - target_.data[i]);
  std::vector<double> out = conv1x1_weight_gradient(input_, g);
  out.resize(num_params(), 0.0);
  for (int y = 0; y < g.h; ++y) {
    for (int x = 0; x < g.w; ++x) {
      for (int o = 0; o < g.c; ++o) out[layer_.weight.size() + static_cast<std::size_t>(o)] += g.at(y, x, o);
    }
  }
  return out;
}

ProjectionProblem::ProjectionProblem(Eigen::MatrixXd projection, Eigen::VectorXd input,
                                     Eigen::VectorXd target)
    : p_(std::move(projection)), f_(std::move(input)), t_(std::move(target)) {
  if (p_.cols() != f_.size() || p_.rows() != t_.size()) {
    throw Error("ShapeMismatch", "projection problem shapes do not agree");
  }
}

std::size_t ProjectionProblem::num_params() const { return static_cast<std::size_t>(p_.size()); }

double& ProjectionProblem::param(std::size_t i) { return p_.data()[i]; }

double ProjectionProblem::loss() const { return (p_ * f_ - t_).squaredNorm(); }

std::vector<double> ProjectionProblem::gradient() const {
  const Eigen::MatrixXd g = 2.0 * (p_ * f_ - t_) * f_.transpose();
  return std::vector<double>(g.data(), g.data() + g.size());
}

double grad_check(GradProblem& problem, const GradCheckOptions& options) {
  const std::size_t n = problem.num_params();
  if (n == 0) return 0.0;
  const std::vector<double> analytic = problem.gradient();
  std::mt19937_64 rng(options.seed);
  std::uniform_int_distribution<std::size_t> pick(0, n - 1);
  double worst = 0.0;
  for (std::size_t s = 0; s < options.samples; ++s) {
    const std::size_t i = pick(rng);
    double& p = problem.param(i);
    const double saved = p;
    p = saved + options.step;
    const double up = problem.loss();
    p = saved - options.step;
    const double down = problem.loss();
    p = saved;
    const double numeric = (up - down) / (2.0 * options.step);
    const double scale = std::max(std::abs(analytic[i]), std::abs(numeric));
    if (scale > 0.0) worst = std::max(worst, std::abs(analytic[i] - numeric) / scale);
  }
  return worst;
}

std::vector<double> conv1x1_weight_gradient(const Tensor3& input, const Tensor3& upstream) {
  if (input.h != upstream.h || input.w != upstream.w) {
    throw Error("ShapeMismatch", "input and upstream gradient differ in spatial size");
  }
  std::vector<double> g(static_cast<std::size_t>(upstream.c) * input.c, 0.0);
  for (int y = 0; y < input.h; ++y) {
    for (int x = 0; x < input.w; ++x) {
      for (int o = 0; o < upstream.c; ++o) {
        const double u = upstream.at(y, x, o);
        for (int i = 0; i < input.c; ++i) {
          g[static_cast<std::size_t>(o) * input.c + i] += u * input.at(y, x, i);
        }
      }
    }
  }
  return g;
}

}  // namespace sketchguide::control

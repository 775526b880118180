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
#include <vector>

#include <Eigen/Core>

#include "sketchguide/control/branch.hpp"

namespace sketchguide::control {

/// A layer plus fixed input and target with loss sum((y - t)^2) and an
/// analytic gradient over a flat parameter vector.
class GradProblem {
 public:
  virtual ~GradProblem() = default;
  virtual std::size_t num_params() const = 0;
  virtual double& param(std::size_t i) = 0;
  virtual double loss() const = 0;
  virtual std::vector<double> gradient() const = 0;
};

/// 1x1 convolution (weights then biases) applied to every pixel.
class ZeroConvProblem : public GradProblem {
 public:
  ZeroConvProblem(Conv2d layer, Tensor3 input, Tensor3 target);
  std::size_t num_params() const override;
  double& param(std::size_t i) override;
  double loss() const override;
  std::vector<double> gradient() const override;
  const Conv2d& layer() const { return layer_; }

 private:
  Conv2d layer_;
  Tensor3 input_;
  Tensor3 target_;
};

/// y = P * f, parameters P in column-major order.
class ProjectionProblem : public GradProblem {
 public:
  ProjectionProblem(Eigen::MatrixXd projection, Eigen::VectorXd input, Eigen::VectorXd target);
  std::size_t num_params() const override;
  double& param(std::size_t i) override;
  double loss() const override;
  std::vector<double> gradient() const override;

 private:
  Eigen::MatrixXd p_;
  Eigen::VectorXd f_;
  Eigen::VectorXd t_;
};

struct GradCheckOptions {
  std::size_t samples = 10;
  double step = 1e-4;
  std::uint64_t seed = 11;
};

/// Central differences on randomly chosen parameters; returns the largest
/// |analytic - numeric| / max(|analytic|, |numeric|) (0 when both vanish).
/// Parameters are restored afterwards.
double grad_check(GradProblem& problem, const GradCheckOptions& options = {});

/// d(sum_pixels upstream . (W x + b)) / dW for a 1x1 conv, layout [o * in + i].
/// Independent of W, so it is non-zero at the zero initialization whenever
/// the input is.
std::vector<double> conv1x1_weight_gradient(const Tensor3& input, const Tensor3& upstream);

}  // namespace sketchguide::control

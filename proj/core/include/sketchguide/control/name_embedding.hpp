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

#include <cstdint>
#include <random>
#include <string_view>

#include <Eigen/Core>

#include "sketchguide/error.hpp"

namespace sketchguide::control {

inline constexpr int kModelDim = 768;

class EmptyName : public Error {
 public:
  EmptyName() : Error("EmptyName", "object name must not be empty") {}
};

/// Adapter point for a real text encoder.
class NameEmbedder {
 public:
  virtual ~NameEmbedder() = default;
  virtual int dim() const = 0;
  /// Throws EmptyName.
  virtual Eigen::VectorXd embed(std::string_view name) const = 0;
};

/// Unit vector of Gaussian draws from mt19937_64, seeded with FNV-1a of the
/// name bytes mixed with a global seed. Gaussians come from an explicit
/// Box-Muller transform so the values do not depend on the standard library.
class SeededNameEmbedder : public NameEmbedder {
 public:
  explicit SeededNameEmbedder(std::uint64_t seed = kDefaultSeed, int dim = kModelDim);
  int dim() const override { return dim_; }
  Eigen::VectorXd embed(std::string_view name) const override;

  static constexpr std::uint64_t kDefaultSeed = 0x5ce7c6u;

 private:
  std::uint64_t seed_;
  int dim_;
};

/// SeededNameEmbedder with the default seed.
Eigen::VectorXd embed_name(std::string_view name);

/// Standard normal draws from a seeded mt19937_64 (Box-Muller), shared by
/// every seeded initializer in this module.
class GaussianStream {
 public:
  explicit GaussianStream(std::uint64_t seed);
  double next();
  double uniform();  // [0, 1)

 private:
  std::mt19937_64 engine_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

std::uint64_t fnv1a64(std::string_view bytes);

}  // namespace sketchguide::control

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
#include "sketchguide/control/name_embedding.hpp"

#include <cmath>
#include <numbers>

namespace sketchguide::control {

std::uint64_t fnv1a64(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return h;
}

GaussianStream::GaussianStream(std::uint64_t seed) : engine_(seed) {}

double GaussianStream::uniform() {
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double GaussianStream::next() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  double u1 = uniform();
  while (u1 <= 0.0) u1 = uniform();
  const double u2 = uniform();
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double t = 2.0 * std::numbers::pi * u2;
  spare_ = r * std::sin(t);
  has_spare_ = true;
  return r * std::cos(t);
}

SeededNameEmbedder::SeededNameEmbedder(std::uint64_t seed, int dim) : seed_(seed), dim_(dim) {
  if (dim <= 0) throw Error("InvalidConfig", "embedding dim must be positive");
}

Eigen::VectorXd SeededNameEmbedder::embed(std::string_view name) const {
  if (name.empty()) throw EmptyName();
  // splitmix-style finalizer so nearby seeds give unrelated streams
  std::uint64_t s = fnv1a64(name) ^ (seed_ + 0x9e3779b97f4a7c15ull);
  s = (s ^ (s >> 30)) * 0xbf58476d1ce4e5b9ull;
  s = (s ^ (s >> 27)) * 0x94d049bb133111ebull;
  s ^= s >> 31;
  GaussianStream g(s);
  Eigen::VectorXd v(dim_);
  for (int i = 0; i < dim_; ++i) v[i] = g.next();
  const double n = v.norm();
  return v / n;
}

Eigen::VectorXd embed_name(std::string_view name) {
  static const SeededNameEmbedder embedder;
  return embedder.embed(name);
}

}  // namespace sketchguide::control

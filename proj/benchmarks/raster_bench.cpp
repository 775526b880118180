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
#include <benchmark/benchmark.h>

#include <random>

#include "sketchguide/raster/components.hpp"
#include "sketchguide/raster/rasterize.hpp"
#include "sketchguide/tikz/parser.hpp"

namespace {

const char* kScene =
    "\\begin{tikzpicture}\n"
    "\\fill[red] (1,1) circle (0.8);\n"
    "\\fill[red] (2.5,2.5) rectangle (4.5,4);\n"
    "\\fill[red] (0.5,4) -- (1.5,5) -- (2,3.5) -- cycle;\n"
    "\\draw[red, line width=3pt] (3,0.5) -- (5,2);\n"
    "\\end{tikzpicture}\n";

void BM_Rasterize(benchmark::State& state) {
  const auto prog = sketchguide::tikz::parse_source(kScene);
  sketchguide::raster::RasterOptions opt;
  opt.circle_segments = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(sketchguide::raster::rasterize(prog, opt));
}
BENCHMARK(BM_Rasterize)->Arg(16)->Arg(64)->Arg(256);

void BM_LabelComponents(benchmark::State& state) {
  sketchguide::raster::SketchBitmap bm(512, 512);
  std::mt19937 rng(1);
  const double density = static_cast<double>(state.range(0)) / 100.0;
  std::bernoulli_distribution ink(density);
  for (auto& p : bm.pixels) p = ink(rng) ? 1 : 0;
  for (auto _ : state) benchmark::DoNotOptimize(sketchguide::raster::label_components(bm));
}
BENCHMARK(BM_LabelComponents)->Arg(5)->Arg(40)->Arg(90);

}  // namespace

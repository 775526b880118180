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
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "sketchguide/error.hpp"

namespace sketchguide::raster {

class RasterError : public Error {
 public:
  using Error::Error;
};

/// Binary raster, row-major, y down. pixels[y * width + x] is 1 for ink.
struct SketchBitmap {
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> pixels;
  std::string provenance;

  SketchBitmap() = default;
  SketchBitmap(int w, int h, std::string source = {})
      : width(w),
        height(h),
        pixels(static_cast<std::size_t>(w) * static_cast<std::size_t>(h), 0),
        provenance(std::move(source)) {}

  bool in_bounds(int x, int y) const { return x >= 0 && y >= 0 && x < width && y < height; }
  std::uint8_t at(int x, int y) const {
    return pixels[static_cast<std::size_t>(y) * width + static_cast<std::size_t>(x)];
  }
  void set(int x, int y) {
    pixels[static_cast<std::size_t>(y) * width + static_cast<std::size_t>(x)] = 1;
  }
  std::size_t ink_count() const;

  /// Pixel equality; provenance is ignored.
  friend bool operator==(const SketchBitmap& a, const SketchBitmap& b) {
    return a.width == b.width && a.height == b.height && a.pixels == b.pixels;
  }
};

/// Binary PGM: "P5\n<w> <h>\n255\n" followed by one byte per pixel, ink 0
/// (black) on 255 (white).
std::string encode_pgm(const SketchBitmap& bitmap);
SketchBitmap decode_pgm(std::string_view bytes);

void write_pgm(const SketchBitmap& bitmap, const std::filesystem::path& path);
SketchBitmap read_pgm(const std::filesystem::path& path);

}  // namespace sketchguide::raster

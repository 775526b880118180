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
#include "sketchguide/raster/bitmap.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <iterator>
#include <numeric>

namespace sketchguide::raster {

std::size_t SketchBitmap::ink_count() const {
  return static_cast<std::size_t>(std::count(pixels.begin(), pixels.end(), std::uint8_t{1}));
}

std::string encode_pgm(const SketchBitmap& bitmap) {
  std::string out = "P5\n" + std::to_string(bitmap.width) + " " + std::to_string(bitmap.height) +
                    "\n255\n";
  out.reserve(out.size() + bitmap.pixels.size());
  for (std::uint8_t p : bitmap.pixels) out.push_back(p ? '\x00' : '\xff');
  return out;
}

namespace {

// Reads one whitespace-delimited header field, skipping '#' comments.
std::string header_field(std::string_view bytes, std::size_t& pos) {
  while (pos < bytes.size()) {
    char c = bytes[pos];
    if (c == '#') {
      while (pos < bytes.size() && bytes[pos] != '\n') ++pos;
    } else if (std::isspace(static_cast<unsigned char>(c))) {
      ++pos;
    } else {
      break;
    }
  }
  std::size_t start = pos;
  while (pos < bytes.size() && !std::isspace(static_cast<unsigned char>(bytes[pos]))) ++pos;
  return std::string(bytes.substr(start, pos - start));
}

int positive_int(const std::string& s, const char* what) {
  if (s.empty() || s.size() > 9 ||
      !std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; })) {
    throw RasterError("InvalidPgm", std::string("bad PGM ") + what + " '" + s + "'");
  }
  return std::stoi(s);
}

}  // namespace

SketchBitmap decode_pgm(std::string_view bytes) {
  std::size_t pos = 0;
  if (header_field(bytes, pos) != "P5") throw RasterError("InvalidPgm", "not a binary PGM (P5)");
  int w = positive_int(header_field(bytes, pos), "width");
  int h = positive_int(header_field(bytes, pos), "height");
  int maxval = positive_int(header_field(bytes, pos), "maxval");
  if (maxval != 255) throw RasterError("InvalidPgm", "only maxval 255 is supported");
  ++pos;  // single whitespace byte after maxval
  std::size_t n = static_cast<std::size_t>(w) * static_cast<std::size_t>(h);
  if (bytes.size() < pos + n) throw RasterError("InvalidPgm", "truncated PGM pixel data");
  SketchBitmap bm(w, h);
  for (std::size_t i = 0; i < n; ++i) {
    bm.pixels[i] = static_cast<unsigned char>(bytes[pos + i]) < 128 ? 1 : 0;
  }
  return bm;
}

void write_pgm(const SketchBitmap& bitmap, const std::filesystem::path& path) {
  std::ofstream os(path, std::ios::binary | std::ios::trunc);
  if (!os) throw IoError("cannot open '" + path.string() + "' for writing");
  const std::string bytes = encode_pgm(bitmap);
  os.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!os) throw IoError("failed writing '" + path.string() + "'");
}

SketchBitmap read_pgm(const std::filesystem::path& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw IoError("cannot open '" + path.string() + "'");
  std::string bytes((std::istreambuf_iterator<char>(is)), std::istreambuf_iterator<char>());
  SketchBitmap bm = decode_pgm(bytes);
  bm.provenance = path.string();
  return bm;
}

}  // namespace sketchguide::raster

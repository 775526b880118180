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
#include "sketchguide/control/residual_io.hpp"

#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <iterator>

namespace sketchguide::control {

namespace {

constexpr char kMagic[4] = {'S', 'G', 'R', 'S'};

void put_u32(std::string& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
}

void put_f64(std::string& out, double d) {
  const auto v = std::bit_cast<std::uint64_t>(d);
  for (int i = 0; i < 8; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
}

class Cursor {
 public:
  explicit Cursor(std::string_view b) : b_(b) {}
  void need(std::size_t n) const {
    if (b_.size() - pos_ < n) throw Error("InvalidResidualFile", "residual file is truncated");
  }
  std::uint32_t u32() {
    need(4);
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i) v |= std::uint32_t(static_cast<unsigned char>(b_[pos_ + i])) << (8 * i);
    pos_ += 4;
    return v;
  }
  double f64() {
    need(8);
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v |= std::uint64_t(static_cast<unsigned char>(b_[pos_ + i])) << (8 * i);
    pos_ += 8;
    return std::bit_cast<double>(v);
  }
  std::string_view take(std::size_t n) {
    need(n);
    auto s = b_.substr(pos_, n);
    pos_ += n;
    return s;
  }
  bool done() const { return pos_ == b_.size(); }

 private:
  std::string_view b_;
  std::size_t pos_ = 0;
};

}  // namespace

std::string encode_residuals(const std::vector<Tensor3>& residuals) {
  std::string out(kMagic, 4);
  put_u32(out, 1);
  put_u32(out, static_cast<std::uint32_t>(residuals.size()));
  for (std::size_t s = 0; s < residuals.size(); ++s) {
    const auto& t = residuals[s];
    put_u32(out, static_cast<std::uint32_t>(s));
    put_u32(out, static_cast<std::uint32_t>(t.h));
    put_u32(out, static_cast<std::uint32_t>(t.w));
    put_u32(out, static_cast<std::uint32_t>(t.c));
    for (double v : t.data) put_f64(out, v);
  }
  return out;
}

std::vector<Tensor3> decode_residuals(std::string_view bytes) {
  Cursor c(bytes);
  if (c.take(4) != std::string_view(kMagic, 4)) {
    throw Error("InvalidResidualFile", "missing SGRS magic");
  }
  if (c.u32() != 1) throw Error("InvalidResidualFile", "unsupported residual file version");
  const std::uint32_t n = c.u32();
  std::vector<Tensor3> out;
  for (std::uint32_t s = 0; s < n; ++s) {
    if (c.u32() != s) throw Error("InvalidResidualFile", "stage indices out of order");
    const std::uint32_t h = c.u32();
    const std::uint32_t w = c.u32();
    const std::uint32_t ch = c.u32();
    const std::uint64_t count = std::uint64_t(h) * w * ch;
    c.need(static_cast<std::size_t>(count * 8));
    Tensor3 t(static_cast<int>(h), static_cast<int>(w), static_cast<int>(ch));
    for (double& v : t.data) v = c.f64();
    out.push_back(std::move(t));
  }
  if (!c.done()) throw Error("InvalidResidualFile", "trailing bytes after last stage");
  return out;
}

void write_residuals(const std::filesystem::path& path, const std::vector<Tensor3>& residuals) {
  std::ofstream os(path, std::ios::binary | std::ios::trunc);
  if (!os) throw IoError("cannot write '" + path.string() + "'");
  const std::string bytes = encode_residuals(residuals);
  os.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!os) throw IoError("failed writing '" + path.string() + "'");
}

std::vector<Tensor3> read_residuals(const std::filesystem::path& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw IoError("cannot open '" + path.string() + "'");
  const std::string bytes((std::istreambuf_iterator<char>(is)), std::istreambuf_iterator<char>());
  return decode_residuals(bytes);
}

}  // namespace sketchguide::control

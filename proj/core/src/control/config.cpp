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
#include "sketchguide/control/config.hpp"

#include <cctype>
#include <charconv>
#include <fstream>
#include <iterator>
#include <sstream>

namespace sketchguide::control {

namespace {

std::string trim(std::string_view s) {
  std::size_t b = 0;
  std::size_t e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

[[noreturn]] void fail(int line, const std::string& msg) {
  throw Error("ConfigError", "line " + std::to_string(line) + ": " + msg, line, 1);
}

std::uint64_t to_u64(const std::string& v, int line) {
  std::uint64_t out = 0;
  const auto res = std::from_chars(v.data(), v.data() + v.size(), out);
  if (res.ec != std::errc() || res.ptr != v.data() + v.size()) fail(line, "expected an integer, got '" + v + "'");
  return out;
}

int to_int(const std::string& v, int line) {
  const std::uint64_t u = to_u64(v, line);
  if (u == 0 || u > 1u << 20) fail(line, "value '" + v + "' out of range");
  return static_cast<int>(u);
}

}  // namespace

ControlConfig parse_control_config(std::string_view text) {
  ControlConfig cfg;
  std::istringstream is{std::string(text)};
  std::string raw;
  std::string section;
  int line = 0;
  while (std::getline(is, raw)) {
    ++line;
    const auto hash = raw.find('#');
    std::string l = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
    if (l.empty()) continue;
    if (l.front() == '[') {
      if (l.back() != ']') fail(line, "unterminated section header");
      section = trim(std::string_view(l).substr(1, l.size() - 2));
      continue;
    }
    const auto eq = l.find('=');
    if (eq == std::string::npos) fail(line, "expected 'key = value'");
    std::string key = trim(std::string_view(l).substr(0, eq));
    const std::string value = trim(std::string_view(l).substr(eq + 1));
    if (!section.empty()) key = section + "." + key;

    if (key == "branch.seed") {
      cfg.branch.seed = to_u64(value, line);
    } else if (key == "branch.d_model") {
      cfg.branch.d_model = to_int(value, line);
    } else if (key == "branch.patch") {
      cfg.branch.patch = to_int(value, line);
    } else if (key == "branch.attention_dim") {
      cfg.branch.attention_dim = to_int(value, line);
    } else if (key == "branch.input_resolution") {
      cfg.branch.input_resolution = to_int(value, line);
    } else if (key == "branch.widths") {
      cfg.branch.widths.clear();
      std::size_t start = 0;
      while (start <= value.size()) {
        std::size_t comma = value.find(',', start);
        if (comma == std::string::npos) comma = value.size();
        cfg.branch.widths.push_back(to_int(trim(std::string_view(value).substr(start, comma - start)), line));
        start = comma + 1;
      }
    } else if (key == "fusion.seed") {
      cfg.fusion_seed = to_u64(value, line);
    } else if (key == "fusion.pad_to") {
      cfg.pad_to = static_cast<std::size_t>(to_u64(value, line));
    } else if (key == "names.seed") {
      cfg.name_seed = to_u64(value, line);
    } else {
      fail(line, "unknown key '" + key + "'");
    }
  }
  return cfg;
}

ControlConfig load_control_config(const std::filesystem::path& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw IoError("cannot open '" + path.string() + "'");
  const std::string text((std::istreambuf_iterator<char>(is)), std::istreambuf_iterator<char>());
  return parse_control_config(text);
}

std::string to_text(const ControlConfig& config) {
  std::ostringstream os;
  os << "[branch]\nseed = " << config.branch.seed << "\nd_model = " << config.branch.d_model
     << "\npatch = " << config.branch.patch << "\nattention_dim = " << config.branch.attention_dim
     << "\ninput_resolution = " << config.branch.input_resolution << "\nwidths = ";
  for (std::size_t i = 0; i < config.branch.widths.size(); ++i) {
    os << (i ? ", " : "") << config.branch.widths[i];
  }
  os << "\n\n[fusion]\nseed = " << config.fusion_seed << "\npad_to = " << config.pad_to
     << "\n\n[names]\nseed = " << config.name_seed << "\n";
  return os.str();
}

}  // namespace sketchguide::control

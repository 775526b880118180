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
#include "sketchguide/llm/prompt.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <regex>

#include "sketchguide/numfmt.hpp"

namespace sketchguide::llm {

namespace {

#include "prompt_templates.inc"

std::string trim(std::string_view s) {
  std::size_t b = 0;
  std::size_t e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

std::string scene_text(const PromptSpec& spec) {
  if (spec.relation) {
    return with_article(spec.objects[0].name) + " " + relation_phrase(*spec.relation) + " " +
           with_article(spec.objects[1].name);
  }
  std::string out;
  for (std::size_t i = 0; i < spec.objects.size(); ++i) {
    if (i > 0) out += (i + 1 == spec.objects.size()) ? " and " : ", ";
    out += with_article(spec.objects[i].name);
  }
  return out;
}

}  // namespace

bool PromptSpec::is_positional() const {
  return !objects.empty() &&
         std::all_of(objects.begin(), objects.end(), [](const auto& o) { return o.center.has_value(); });
}

void validate(const PromptSpec& spec) {
  if (spec.objects.empty()) throw InvalidSpec("prompt spec has no objects");
  if (spec.objects.size() > kMaxGroundings) {
    throw InvalidSpec("prompt spec has " + std::to_string(spec.objects.size()) +
                      " objects; at most 30 are allowed");
  }
  if (!(spec.canvas > 0.0) || !std::isfinite(spec.canvas)) {
    throw InvalidSpec("canvas size must be positive");
  }
  if (spec.relation && spec.objects.size() != 2) {
    throw InvalidSpec(std::string("relation '") + to_string(*spec.relation) +
                      "' needs exactly 2 objects, got " + std::to_string(spec.objects.size()));
  }
  std::size_t with_center = 0;
  for (std::size_t i = 0; i < spec.objects.size(); ++i) {
    const auto& o = spec.objects[i];
    const std::string where = "object " + std::to_string(i);
    if (trim(o.name).empty()) throw InvalidSpec(where + " has an empty name");
    if (o.center) {
      ++with_center;
      const auto& c = *o.center;
      if (!std::isfinite(c.x) || !std::isfinite(c.y) || c.x < 0.0 || c.y < 0.0 ||
          c.x > spec.canvas || c.y > spec.canvas) {
        throw InvalidSpec(where + " center lies outside the canvas");
      }
    }
    if (o.size) {
      if (!o.center) throw InvalidSpec(where + " has a size but no center");
      const auto& s = *o.size;
      if (!(s.w > 0.0) || !(s.h > 0.0) || s.w > spec.canvas || s.h > spec.canvas) {
        throw InvalidSpec(where + " size must be positive and fit the canvas");
      }
    }
  }
  if (with_center != 0 && with_center != spec.objects.size()) {
    throw InvalidSpec("centers must be given for all objects or for none");
  }
}

std::string with_article(std::string_view name) {
  const std::string n = trim(name);
  if (n.empty()) return n;
  const char c = static_cast<char>(std::tolower(static_cast<unsigned char>(n[0])));
  const bool vowel = c == 'a' || c == 'e' || c == 'i' || c == 'o' || c == 'u';
  return (vowel ? "an " : "a ") + n;
}

std::string build_prompt(const PromptSpec& spec) {
  validate(spec);
  const std::string canvas = format_shortest(spec.canvas);
  if (!spec.is_positional()) {
    return PromptTemplate::relation_v1().render("scene",
                                                {{"scene", scene_text(spec)}, {"canvas", canvas}});
  }
  const auto& tmpl = PromptTemplate::position_size_v1();
  std::string out = tmpl.render("scene", {{"scene", scene_text(spec)}, {"canvas", canvas}});
  for (std::size_t i = 0; i < spec.objects.size(); ++i) {
    const auto& o = spec.objects[i];
    std::map<std::string, std::string> v{{"name", trim(o.name)},
                                         {"x", format_with_decimal(o.center->x)},
                                         {"y", format_with_decimal(o.center->y)}};
    std::string key = i == 0 ? "first_object" : "other_object";
    if (o.size) {
      v["w"] = format_with_decimal(o.size->w);
      v["h"] = format_with_decimal(o.size->h);
    } else {
      key += "_no_size";
    }
    out += " " + tmpl.render(key, v);
  }
  return out;
}

PromptSpec parse_spec_text(std::string_view text) {
  const std::string t = trim(text);
  static const std::regex rel(
      R"(^(?:an?\s+)?(.+?)\s+(to the left of|to the right of|left of|right of|left|right|above|below)\s+(?:an?\s+)?(.+)$)",
      std::regex::icase);
  std::smatch m;
  PromptSpec spec;
  if (std::regex_match(t, m, rel)) {
    spec.objects.push_back({trim(m[1].str()), std::nullopt, std::nullopt});
    spec.objects.push_back({trim(m[3].str()), std::nullopt, std::nullopt});
    spec.relation = relation_from_string(m[2].str());
  } else {
    std::size_t start = 0;
    while (start <= t.size()) {
      std::size_t comma = t.find(',', start);
      if (comma == std::string::npos) comma = t.size();
      std::string name = trim(std::string_view(t).substr(start, comma - start));
      static const std::regex article(R"(^an?\s+)", std::regex::icase);
      name = std::regex_replace(name, article, "");
      spec.objects.push_back({name, std::nullopt, std::nullopt});
      start = comma + 1;
    }
  }
  validate(spec);
  return spec;
}

namespace {

std::pair<double, double> number_pair(const nlohmann::json& j, const std::string& path) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
    throw InvalidSpec(path + " must be a [number, number] pair");
  }
  return {j[0].get<double>(), j[1].get<double>()};
}

}  // namespace

PromptSpec prompt_spec_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("objects") || !j["objects"].is_array()) {
    throw InvalidSpec("$.objects must be an array");
  }
  PromptSpec spec;
  for (std::size_t i = 0; i < j["objects"].size(); ++i) {
    const auto& o = j["objects"][i];
    const std::string path = "$.objects[" + std::to_string(i) + "]";
    if (!o.is_object() || !o.contains("name") || !o["name"].is_string()) {
      throw InvalidSpec(path + ".name must be a string");
    }
    PromptObject obj;
    obj.name = o["name"].get<std::string>();
    if (o.contains("center") && !o["center"].is_null()) {
      auto [x, y] = number_pair(o["center"], path + ".center");
      obj.center = Point{x, y};
    }
    if (o.contains("size") && !o["size"].is_null()) {
      auto [w, h] = number_pair(o["size"], path + ".size");
      obj.size = Size2{w, h};
    }
    spec.objects.push_back(std::move(obj));
  }
  if (j.contains("relation") && !j["relation"].is_null()) {
    if (!j["relation"].is_string()) throw InvalidSpec("$.relation must be a string");
    spec.relation = relation_from_string(j["relation"].get<std::string>());
    if (!spec.relation) {
      throw InvalidSpec("$.relation: unknown relation '" + j["relation"].get<std::string>() + "'");
    }
  }
  if (j.contains("canvas")) {
    if (!j["canvas"].is_number()) throw InvalidSpec("$.canvas must be a number");
    spec.canvas = j["canvas"].get<double>();
  }
  validate(spec);
  return spec;
}

nlohmann::ordered_json to_json(const PromptSpec& spec) {
  nlohmann::ordered_json j;
  auto objects = nlohmann::ordered_json::array();
  for (const auto& o : spec.objects) {
    nlohmann::ordered_json jo;
    jo["name"] = o.name;
    if (o.center) jo["center"] = {o.center->x, o.center->y};
    if (o.size) jo["size"] = {o.size->w, o.size->h};
    objects.push_back(std::move(jo));
  }
  j["objects"] = std::move(objects);
  if (spec.relation) j["relation"] = to_string(*spec.relation);
  j["canvas"] = spec.canvas;
  return j;
}

PromptTemplate PromptTemplate::parse(std::string_view text) {
  PromptTemplate out;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t eol = text.find('\n', pos);
    if (eol == std::string_view::npos) eol = text.size();
    std::string_view line = text.substr(pos, eol - pos);
    pos = eol + 1;
    if (trim(line).empty() || trim(line)[0] == '#') continue;
    const std::size_t colon = line.find(':');
    if (colon == std::string_view::npos) {
      throw Error("InvalidTemplate", "template line without 'key:' prefix: " + std::string(line));
    }
    out.lines_[trim(line.substr(0, colon))] = trim(line.substr(colon + 1));
  }
  return out;
}

const PromptTemplate& PromptTemplate::relation_v1() {
  static const PromptTemplate t = parse(kTemplate_relation_prompt_v1_txt);
  return t;
}

const PromptTemplate& PromptTemplate::position_size_v1() {
  static const PromptTemplate t = parse(kTemplate_position_size_prompt_v1_txt);
  return t;
}

const std::string& PromptTemplate::line(const std::string& key) const {
  auto it = lines_.find(key);
  if (it == lines_.end()) throw Error("InvalidTemplate", "template has no '" + key + "' line");
  return it->second;
}

std::string PromptTemplate::render(const std::string& key,
                                   const std::map<std::string, std::string>& values) const {
  const std::string& src = line(key);
  std::string out;
  std::size_t pos = 0;
  while (true) {
    const std::size_t open = src.find("{{", pos);
    if (open == std::string::npos) break;
    const std::size_t close = src.find("}}", open + 2);
    if (close == std::string::npos) break;
    out.append(src, pos, open - pos);
    const std::string name = src.substr(open + 2, close - open - 2);
    auto it = values.find(name);
    if (it == values.end()) throw Error("InvalidTemplate", "no value for placeholder '" + name + "'");
    out += it->second;
    pos = close + 2;
  }
  out.append(src, pos, std::string::npos);
  return out;
}

}  // namespace sketchguide::llm

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

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "sketchguide/error.hpp"
#include "sketchguide/geometry.hpp"
#include "sketchguide/grounding.hpp"
#include "sketchguide/relation.hpp"

namespace sketchguide::llm {

class InvalidSpec : public Error {
 public:
  explicit InvalidSpec(const std::string& message) : Error("InvalidSpec", message) {}
};

struct PromptObject {
  std::string name;
  std::optional<Point> center;  // cm
  std::optional<Size2> size;    // cm
};

struct PromptSpec {
  std::vector<PromptObject> objects;
  std::optional<Relation> relation;
  double canvas = kCanvasCm;

  /// True when every object carries a center (the position/size prompt).
  bool is_positional() const;
};

/// Throws InvalidSpec: 1..30 objects, non-empty names, a relation needs
/// exactly two objects, centers inside the canvas, sizes positive and no
/// larger than the canvas. Centers must be given for all objects or none.
void validate(const PromptSpec& spec);

/// Relation-only specs use the relation template, specs with centers the
/// position/size template. Pure function of the spec.
std::string build_prompt(const PromptSpec& spec);

/// Parses short text like "tv above surfboard", "giraffe left of apple" or
/// "cat, dog". Throws InvalidSpec.
PromptSpec parse_spec_text(std::string_view text);

/// {"objects":[{"name":..,"center":[x,y],"size":[w,h]}],"relation":"above"}.
PromptSpec prompt_spec_from_json(const nlohmann::json& j);
nlohmann::ordered_json to_json(const PromptSpec& spec);

/// "a tv", "an apple".
std::string with_article(std::string_view name);

/// A keyed template: "key: text" lines, '#' comments.
class PromptTemplate {
 public:
  static PromptTemplate parse(std::string_view text);
  static const PromptTemplate& relation_v1();
  static const PromptTemplate& position_size_v1();

  const std::string& line(const std::string& key) const;
  std::string render(const std::string& key,
                     const std::map<std::string, std::string>& values) const;

 private:
  std::map<std::string, std::string> lines_;
};

}  // namespace sketchguide::llm

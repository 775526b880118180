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
#include "sketchguide/relation.hpp"

#include <algorithm>
#include <cctype>
#include <string>

namespace sketchguide {

const char* to_string(Relation relation) {
  switch (relation) {
    case Relation::kLeft: return "left";
    case Relation::kRight: return "right";
    case Relation::kAbove: return "above";
    case Relation::kBelow: return "below";
  }
  return "left";
}

const char* relation_phrase(Relation relation) {
  switch (relation) {
    case Relation::kLeft: return "to the left of";
    case Relation::kRight: return "to the right of";
    case Relation::kAbove: return "above";
    case Relation::kBelow: return "below";
  }
  return "to the left of";
}

std::optional<Relation> relation_from_string(std::string_view text) {
  std::string s;
  for (char c : text) s.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.pop_back();
  s.erase(0, std::min(s.size(), s.find_first_not_of(" \t\r\n")));
  if (s == "left" || s == "to the left of" || s == "left of") return Relation::kLeft;
  if (s == "right" || s == "to the right of" || s == "right of") return Relation::kRight;
  if (s == "above") return Relation::kAbove;
  if (s == "below") return Relation::kBelow;
  return std::nullopt;
}

Relation inverse(Relation relation) {
  switch (relation) {
    case Relation::kLeft: return Relation::kRight;
    case Relation::kRight: return Relation::kLeft;
    case Relation::kAbove: return Relation::kBelow;
    case Relation::kBelow: return Relation::kAbove;
  }
  return relation;
}

}  // namespace sketchguide

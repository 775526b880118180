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
#include "sketchguide/grounding.hpp"

#include <cmath>

namespace sketchguide {

void validate(const GroundingSet& set) {
  if (set.entries.size() > kMaxGroundings) {
    throw GroundingError("TooManyGroundings",
                         "grounding set has " +
                             std::to_string(set.entries.size()) +
                             " entries; at most 30 are allowed");
  }
  for (const auto& e : set.entries) {
    if (e.name.empty()) {
      throw GroundingError("InvalidGrounding", "grounding name is empty");
    }
    if (!std::isfinite(e.center.x) || !std::isfinite(e.center.y)) {
      throw GroundingError("InvalidGrounding",
                           "grounding '" + e.name + "' has a non-finite center");
    }
  }
}

const char* to_string(GroundingSource source) {
  switch (source) {
    case GroundingSource::kLlm:
      return "llm";
    case GroundingSource::kDataset:
      return "dataset";
    case GroundingSource::kManual:
      return "manual";
  }
  return "manual";
}

GroundingSource grounding_source_from_string(const std::string& text) {
  if (text == "llm") return GroundingSource::kLlm;
  if (text == "dataset") return GroundingSource::kDataset;
  if (text == "manual") return GroundingSource::kManual;
  throw GroundingError("InvalidGrounding", "unknown grounding source '" + text + "'");
}

nlohmann::ordered_json to_json(const GroundingEntry& entry) {
  nlohmann::ordered_json j;
  j["name"] = entry.name;
  j["center"] = {entry.center.x, entry.center.y};
  if (entry.size) j["size"] = {entry.size->w, entry.size->h};
  return j;
}

nlohmann::ordered_json to_json(const GroundingSet& set) {
  nlohmann::ordered_json j;
  j["source"] = to_string(set.source);
  auto entries = nlohmann::ordered_json::array();
  for (const auto& e : set.entries) entries.push_back(to_json(e));
  j["entries"] = std::move(entries);
  return j;
}

GroundingSet grounding_set_from_json(const nlohmann::json& j) {
  GroundingSet set;
  const nlohmann::json* entries = &j;
  if (j.is_object()) {
    if (j.contains("source")) {
      set.source = grounding_source_from_string(j.at("source").get<std::string>());
    }
    if (!j.contains("entries")) {
      throw GroundingError("InvalidGrounding", "grounding JSON lacks 'entries'");
    }
    entries = &j.at("entries");
  }
  if (!entries->is_array()) {
    throw GroundingError("InvalidGrounding", "grounding entries must be an array");
  }
  for (const auto& e : *entries) {
    try {
      GroundingEntry entry;
      entry.name = e.at("name").get<std::string>();
      const auto& c = e.at("center");
      entry.center = {c.at(0).get<double>(), c.at(1).get<double>()};
      if (e.contains("size") && !e.at("size").is_null()) {
        const auto& s = e.at("size");
        entry.size = Size2{s.at(0).get<double>(), s.at(1).get<double>()};
      }
      set.entries.push_back(std::move(entry));
    } catch (const nlohmann::json::exception& ex) {
      throw GroundingError("InvalidGrounding",
                           std::string("malformed grounding entry: ") + ex.what());
    }
  }
  validate(set);
  return set;
}

}  // namespace sketchguide

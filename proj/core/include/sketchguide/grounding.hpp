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
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "sketchguide/error.hpp"
#include "sketchguide/geometry.hpp"

namespace sketchguide {

/// Hard cap on grounding tokens per image.
inline constexpr std::size_t kMaxGroundings = 30;

struct Size2 {
  double w = 0.0;
  double h = 0.0;
  friend bool operator==(const Size2&, const Size2&) = default;
};

struct GroundingEntry {
  std::string name;
  Point center;                // cm, y up
  std::optional<Size2> size;   // cm; metadata only, never embedded
  friend bool operator==(const GroundingEntry&, const GroundingEntry&) = default;
};

enum class GroundingSource { kLlm, kDataset, kManual };

struct GroundingSet {
  std::vector<GroundingEntry> entries;
  GroundingSource source = GroundingSource::kManual;

  std::size_t size() const { return entries.size(); }
  bool empty() const { return entries.empty(); }

  friend bool operator==(const GroundingSet&, const GroundingSet&) = default;
};

class GroundingError : public Error {
 public:
  using Error::Error;
};

/// Throws GroundingError: TooManyGroundings above kMaxGroundings entries,
/// InvalidGrounding on an empty name or a non-finite center.
void validate(const GroundingSet& set);

const char* to_string(GroundingSource source);
GroundingSource grounding_source_from_string(const std::string& text);

nlohmann::ordered_json to_json(const GroundingEntry& entry);
nlohmann::ordered_json to_json(const GroundingSet& set);
GroundingSet grounding_set_from_json(const nlohmann::json& j);

}  // namespace sketchguide

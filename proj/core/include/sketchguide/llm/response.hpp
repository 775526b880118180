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

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "sketchguide/geometry.hpp"
#include "sketchguide/grounding.hpp"

namespace sketchguide::llm {

struct SummaryEntry {
  std::string name;
  Point position;  // cm
  friend bool operator==(const SummaryEntry&, const SummaryEntry&) = default;
};

struct LlmResponse {
  std::string raw_text;
  std::optional<std::string> code_block;  // \begin{tikzpicture} ... \end{tikzpicture}
  std::optional<std::vector<SummaryEntry>> summary;
};

/// Never throws; missing parts come back as nullopt. The summary is the list
/// of "{'object name': N, 'position': (x, y)}" entries after the first
/// "Summary of the drawing" header; a header with no parseable entry yields
/// nullopt.
LlmResponse parse_response(std::string_view raw);

GroundingSet summary_to_groundings(const std::vector<SummaryEntry>& summary);

nlohmann::ordered_json to_json(const LlmResponse& response);

}  // namespace sketchguide::llm

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
#include <string_view>

namespace sketchguide {

enum class Relation { kLeft, kRight, kAbove, kBelow };

/// "left", "right", "above", "below".
const char* to_string(Relation relation);

/// Prompt wording: "to the left of", "to the right of", "above", "below".
const char* relation_phrase(Relation relation);

/// Accepts the short names and the prompt phrases, case-insensitively.
std::optional<Relation> relation_from_string(std::string_view text);

/// left <-> right, above <-> below.
Relation inverse(Relation relation);

}  // namespace sketchguide

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

namespace sketchguide {

/// Shortest decimal text that parses back to exactly `value`; never uses
/// exponent notation ("0.25", "5.12", "-1", "1e-7" -> "0.0000001").
std::string format_shortest(double value);

/// Like format_shortest but always carries a fractional part ("1.0").
std::string format_with_decimal(double value);

/// Fixed-point with `decimals` digits ("44.17").
std::string format_fixed(double value, int decimals);

/// Strict decimal parse of the whole view (std::from_chars semantics,
/// leading '+' accepted). Returns nullopt on any trailing garbage.
std::optional<double> parse_double(std::string_view text);

}  // namespace sketchguide

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

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <string_view>

#include "sketchguide/control/branch.hpp"

namespace sketchguide::control {

/// Seeds and shapes for the reference model. Text form is "key = value"
/// lines with '#' comments and optional [section] headers that prefix keys,
/// e.g. [branch] widths = 8, 16, 32, 64, 64.
struct ControlConfig {
  BranchConfig branch;
  std::uint64_t fusion_seed = 7;
  std::uint64_t name_seed = SeededNameEmbedder::kDefaultSeed;
  std::size_t pad_to = 0;
};

/// Throws Error("ConfigError") with the line number on bad input; unknown
/// keys are errors too.
ControlConfig parse_control_config(std::string_view text);
ControlConfig load_control_config(const std::filesystem::path& path);
std::string to_text(const ControlConfig& config);

}  // namespace sketchguide::control

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

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "sketchguide/control/branch.hpp"

namespace sketchguide::control {

/// "SGRS", u32 version 1, u32 stage count, then per stage u32 {stage, h, w,
/// c} followed by h*w*c little-endian float64 values in Tensor3 order.
std::string encode_residuals(const std::vector<Tensor3>& residuals);
std::vector<Tensor3> decode_residuals(std::string_view bytes);

void write_residuals(const std::filesystem::path& path, const std::vector<Tensor3>& residuals);
std::vector<Tensor3> read_residuals(const std::filesystem::path& path);

}  // namespace sketchguide::control

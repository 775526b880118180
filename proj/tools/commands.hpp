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

#include <CLI11.hpp>

namespace sketchguide::cli {

struct GlobalFlags {
  bool json = false;
  bool json_errors = false;
};

// Each registers a subcommand whose callback does the work and throws
// sketchguide::Error on failure.
void add_parse(CLI::App& app, const GlobalFlags& flags);
void add_rasterize(CLI::App& app, const GlobalFlags& flags);
void add_prompt(CLI::App& app, const GlobalFlags& flags);
void add_query(CLI::App& app, const GlobalFlags& flags);
void add_build_dataset(CLI::App& app, const GlobalFlags& flags);
void add_ground(CLI::App& app, const GlobalFlags& flags);
void add_evaluate(CLI::App& app, const GlobalFlags& flags);
void add_pipeline(CLI::App& app, const GlobalFlags& flags);
void add_tally(CLI::App& app, const GlobalFlags& flags);

}  // namespace sketchguide::cli

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
#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "sketchguide/llm/gateway.hpp"

namespace sketchguide::llm {

struct TallyEntry {
  std::string query_id;
  QueryStatus status = QueryStatus::kEmpty;
};

/// One row of the compile-success table. Empty and non-runnable answers are
/// merged into failed_runs, the "# of empty image or non-runnable code"
/// column. Instruction errors are only known with a human annotation file;
/// they are counted over all annotated queries and, separately, over the
/// runnable ones, leaving the choice of denominator to the reader.
struct TallyRow {
  std::string label;
  std::size_t queries = 0;
  std::size_t ok = 0;
  std::size_t no_summary = 0;
  std::size_t empty = 0;
  std::size_t non_runnable = 0;
  std::size_t failed_runs = 0;
  std::optional<std::size_t> instruction_errors;
  std::optional<std::size_t> instruction_errors_runnable;
};

using InstructionAnnotations = std::map<std::string, bool>;

TallyRow tally(std::span<const TallyEntry> entries,
               const std::optional<InstructionAnnotations>& annotations = std::nullopt,
               std::string label = {});

/// JSON object mapping query id to true when the answer broke the
/// instructions.
InstructionAnnotations load_instruction_annotations(const std::filesystem::path& path);

/// Header plus one line per row; missing instruction counts print "n/a".
std::string tally_csv(std::span<const TallyRow> rows);

}  // namespace sketchguide::llm

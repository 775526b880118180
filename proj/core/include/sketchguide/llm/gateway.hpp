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

#include "sketchguide/error.hpp"
#include "sketchguide/grounding.hpp"
#include "sketchguide/llm/prompt.hpp"
#include "sketchguide/llm/response.hpp"
#include "sketchguide/llm/transport.hpp"
#include "sketchguide/tikz/ast.hpp"

namespace sketchguide::llm {

enum class QueryStatus { kOk, kNonRunnable, kEmpty, kNoSummary };

/// "ok", "non_runnable", "empty", "no_summary".
const char* to_string(QueryStatus status);
QueryStatus query_status_from_string(const std::string& text);

struct QueryResult {
  std::string prompt;
  LlmResponse response;
  std::optional<tikz::SketchProgram> program;
  std::optional<GroundingSet> groundings;
  std::optional<Diagnostic> parse_error;
  QueryStatus status = QueryStatus::kEmpty;
};

/// Classifies a raw answer: no code block or no drawable command is empty,
/// a code block that fails to parse is non_runnable, runnable code without a
/// summary is no_summary, otherwise ok.
QueryResult classify_response(std::string prompt, std::string_view raw);

/// build_prompt -> transport -> parse_response -> tikz parse.
QueryResult run_query(const PromptSpec& spec, Transport& transport);

}  // namespace sketchguide::llm

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
#include "sketchguide/llm/gateway.hpp"

#include "sketchguide/tikz/errors.hpp"
#include "sketchguide/tikz/parser.hpp"

namespace sketchguide::llm {

const char* to_string(QueryStatus status) {
  switch (status) {
    case QueryStatus::kOk: return "ok";
    case QueryStatus::kNonRunnable: return "non_runnable";
    case QueryStatus::kEmpty: return "empty";
    case QueryStatus::kNoSummary: return "no_summary";
  }
  return "empty";
}

QueryStatus query_status_from_string(const std::string& text) {
  if (text == "ok") return QueryStatus::kOk;
  if (text == "non_runnable") return QueryStatus::kNonRunnable;
  if (text == "empty") return QueryStatus::kEmpty;
  if (text == "no_summary") return QueryStatus::kNoSummary;
  throw Error("InvalidStatus", "unknown query status '" + text + "'");
}

QueryResult classify_response(std::string prompt, std::string_view raw) {
  QueryResult out;
  out.prompt = std::move(prompt);
  out.response = parse_response(raw);
  if (!out.response.code_block) {
    out.status = QueryStatus::kEmpty;
    return out;
  }
  try {
    out.program = tikz::parse_source(*out.response.code_block);
  } catch (const Error& e) {
    out.parse_error = Diagnostic{e.code(), e.what(), e.line(), e.column()};
    out.status = QueryStatus::kNonRunnable;
    return out;
  }
  if (out.program->commands.empty()) {
    out.status = QueryStatus::kEmpty;
    return out;
  }
  if (!out.response.summary) {
    out.status = QueryStatus::kNoSummary;
    return out;
  }
  out.groundings = summary_to_groundings(*out.response.summary);
  out.status = QueryStatus::kOk;
  return out;
}

QueryResult run_query(const PromptSpec& spec, Transport& transport) {
  std::string prompt = build_prompt(spec);
  std::string raw = transport.complete(prompt);
  return classify_response(std::move(prompt), raw);
}

}  // namespace sketchguide::llm

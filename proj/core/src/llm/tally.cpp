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
#include "sketchguide/llm/tally.hpp"

#include <fstream>
#include <iterator>
#include <sstream>

#include <nlohmann/json.hpp>

namespace sketchguide::llm {

namespace {

bool runnable(QueryStatus s) { return s == QueryStatus::kOk || s == QueryStatus::kNoSummary; }

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string count_or_na(const std::optional<std::size_t>& v) {
  return v ? std::to_string(*v) : std::string("n/a");
}

}  // namespace

TallyRow tally(std::span<const TallyEntry> entries,
               const std::optional<InstructionAnnotations>& annotations, std::string label) {
  TallyRow row;
  row.label = std::move(label);
  row.queries = entries.size();
  std::size_t errors = 0;
  std::size_t errors_runnable = 0;
  for (const auto& e : entries) {
    switch (e.status) {
      case QueryStatus::kOk: ++row.ok; break;
      case QueryStatus::kNoSummary: ++row.no_summary; break;
      case QueryStatus::kEmpty: ++row.empty; break;
      case QueryStatus::kNonRunnable: ++row.non_runnable; break;
    }
    if (annotations) {
      auto it = annotations->find(e.query_id);
      if (it != annotations->end() && it->second) {
        ++errors;
        if (runnable(e.status)) ++errors_runnable;
      }
    }
  }
  row.failed_runs = row.empty + row.non_runnable;
  if (annotations) {
    row.instruction_errors = errors;
    row.instruction_errors_runnable = errors_runnable;
  }
  return row;
}

InstructionAnnotations load_instruction_annotations(const std::filesystem::path& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw IoError("cannot open '" + path.string() + "'");
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(is);
  } catch (const nlohmann::json::exception& e) {
    throw Error("SchemaError", path.string() + ": " + e.what());
  }
  if (!j.is_object()) throw Error("SchemaError", path.string() + ": expected an object of booleans");
  InstructionAnnotations out;
  for (auto it = j.begin(); it != j.end(); ++it) {
    if (!it.value().is_boolean()) {
      throw Error("SchemaError", path.string() + ": $." + it.key() + " must be a boolean");
    }
    out[it.key()] = it.value().get<bool>();
  }
  return out;
}

std::string tally_csv(std::span<const TallyRow> rows) {
  std::ostringstream os;
  os << "model,queries,# of errors w.r.t instructions,# of empty image or non-runnable code,"
        "ok,no_summary,empty,non_runnable,errors among runnable\n";
  for (const auto& r : rows) {
    os << csv_field(r.label) << ',' << r.queries << ',' << count_or_na(r.instruction_errors) << ','
       << r.failed_runs << ',' << r.ok << ',' << r.no_summary << ',' << r.empty << ','
       << r.non_runnable << ',' << count_or_na(r.instruction_errors_runnable) << '\n';
  }
  return os.str();
}

}  // namespace sketchguide::llm

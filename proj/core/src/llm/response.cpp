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
#include "sketchguide/llm/response.hpp"

#include <algorithm>
#include <cctype>
#include <regex>

#include "sketchguide/numfmt.hpp"

namespace sketchguide::llm {

namespace {

std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

std::optional<std::string> code_span(std::string_view raw) {
  static constexpr std::string_view kBegin = "\\begin{tikzpicture}";
  static constexpr std::string_view kEnd = "\\end{tikzpicture}";
  const std::size_t b = raw.find(kBegin);
  if (b == std::string_view::npos) return std::nullopt;
  const std::size_t e = raw.find(kEnd, b + kBegin.size());
  if (e == std::string_view::npos) return std::nullopt;
  return std::string(raw.substr(b, e + kEnd.size() - b));
}

std::string strip_quotes(std::string s) {
  auto is_quote = [](char c) { return c == '\'' || c == '"' || c == '`'; };
  while (!s.empty() && (is_quote(s.front()) || std::isspace(static_cast<unsigned char>(s.front())))) {
    s.erase(s.begin());
  }
  while (!s.empty() && (is_quote(s.back()) || std::isspace(static_cast<unsigned char>(s.back())))) {
    s.pop_back();
  }
  return s;
}

}  // namespace

LlmResponse parse_response(std::string_view raw) {
  LlmResponse out;
  out.raw_text = std::string(raw);
  out.code_block = code_span(raw);

  const std::string low = lower(raw);
  const std::size_t header = low.find("summary of the drawing");
  if (header == std::string::npos) return out;

  // Entries look like {'object name': person, 'position': (1, 1.5)} with any
  // mix of quote characters, optional '$' around the tuple and an optional
  // trailing comma before the closing brace.
  static const std::regex entry(
      R"(\{\s*[`'"]?\s*object[ _]?name\s*[`'"]?\s*:\s*([^,}]*?)\s*,\s*[`'"]?\s*position\s*[`'"]?\s*:\s*\$?\s*[\(\[]\s*([-+]?[0-9]*\.?[0-9]+)\s*,\s*([-+]?[0-9]*\.?[0-9]+)\s*[\)\]]\s*\$?\s*,?\s*\})",
      std::regex::icase);
  const std::string tail = out.raw_text.substr(header);
  std::vector<SummaryEntry> entries;
  for (auto it = std::sregex_iterator(tail.begin(), tail.end(), entry); it != std::sregex_iterator();
       ++it) {
    const auto& m = *it;
    const auto x = parse_double(m[2].str());
    const auto y = parse_double(m[3].str());
    std::string name = strip_quotes(m[1].str());
    if (!x || !y || name.empty()) continue;
    entries.push_back({std::move(name), {*x, *y}});
  }
  if (!entries.empty()) out.summary = std::move(entries);
  return out;
}

GroundingSet summary_to_groundings(const std::vector<SummaryEntry>& summary) {
  GroundingSet set;
  set.source = GroundingSource::kLlm;
  for (const auto& e : summary) set.entries.push_back({e.name, e.position, std::nullopt});
  return set;
}

nlohmann::ordered_json to_json(const LlmResponse& response) {
  nlohmann::ordered_json j;
  j["raw_text"] = response.raw_text;
  if (response.code_block) {
    j["code_block"] = *response.code_block;
  } else {
    j["code_block"] = nullptr;
  }
  if (response.summary) {
    auto arr = nlohmann::ordered_json::array();
    for (const auto& e : *response.summary) {
      arr.push_back({{"object name", e.name}, {"position", {e.position.x, e.position.y}}});
    }
    j["summary"] = std::move(arr);
  } else {
    j["summary"] = nullptr;
  }
  return j;
}

}  // namespace sketchguide::llm

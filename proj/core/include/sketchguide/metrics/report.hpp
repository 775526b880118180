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

#include <array>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "sketchguide/metrics/position_size.hpp"
#include "sketchguide/metrics/visor.hpp"

namespace sketchguide::metrics {

struct MetricsReport {
  std::string label;
  std::optional<VisorReport> visor;
  std::optional<std::array<RelationRow, 4>> relations;
  std::optional<PositionSizeTable> position_size;
};

/// Header plus string cells; rates are percentages with 2 decimals, NaN
/// prints as "n/a".
struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
  friend bool operator==(const Table&, const Table&) = default;
};

/// "Uncond (%)", "Cond (%)", "OA (%)", "Visor 1 (%)" .. "Visor 4 (%)".
Table visor_table(const std::vector<MetricsReport>& reports);
/// "Visor Score (%) <rel>" then "Object Acc (%) <rel>" for each relation.
Table relation_table(const std::vector<MetricsReport>& reports);
/// Obj1 Pos .. "Pos & Size", all in percent.
Table position_table(const std::vector<MetricsReport>& reports);

std::string format_rate(double rate);
/// Inverse of format_rate: percentage text back to a rate; "n/a" is NaN.
double parse_rate(std::string_view text);

std::string to_csv(const Table& table, char sep = ',');
Table parse_csv(std::string_view text, char sep = ',');
/// Space-aligned columns for terminals.
std::string to_text(const Table& table);

enum class ReportFormat { kCsv, kTsv, kText };

/// Writes visor, relations and position_size tables (those present in any
/// report) into dir as <name>.csv, .tsv or .txt. Returns the written paths.
std::vector<std::filesystem::path> emit_report(const std::vector<MetricsReport>& reports,
                                               const std::filesystem::path& dir,
                                               ReportFormat format = ReportFormat::kCsv);

}  // namespace sketchguide::metrics

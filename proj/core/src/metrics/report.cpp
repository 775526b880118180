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
#include "sketchguide/metrics/report.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include "sketchguide/numfmt.hpp"

namespace sketchguide::metrics {

namespace {

constexpr std::array<Relation, 4> kRelations = {Relation::kLeft, Relation::kRight, Relation::kAbove,
                                                Relation::kBelow};

std::string quote(const std::string& s, char sep) {
  if (s.find(sep) == std::string::npos && s.find('"') == std::string::npos &&
      s.find('\n') == std::string::npos) {
    return s;
  }
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream os(path, std::ios::binary | std::ios::trunc);
  if (!os) throw IoError("cannot write '" + path.string() + "'");
  os << text;
  if (!os) throw IoError("failed writing '" + path.string() + "'");
}

}  // namespace

std::string format_rate(double rate) {
  if (std::isnan(rate)) return "n/a";
  return format_fixed(100.0 * rate, 2);
}

double parse_rate(std::string_view text) {
  if (text == "n/a") return std::numeric_limits<double>::quiet_NaN();
  const auto v = parse_double(text);
  if (!v) throw MetricsError("SchemaError", "not a percentage: '" + std::string(text) + "'");
  return *v / 100.0;
}

Table visor_table(const std::vector<MetricsReport>& reports) {
  Table t;
  t.header = {"Model", "Uncond (%)", "Cond (%)", "OA (%)"};
  std::size_t k_max = 4;
  for (const auto& r : reports) {
    if (r.visor) k_max = std::max(k_max, r.visor->visor_k.size());
  }
  for (std::size_t k = 1; k <= k_max; ++k) t.header.push_back("Visor " + std::to_string(k) + " (%)");
  for (const auto& r : reports) {
    if (!r.visor) continue;
    std::vector<std::string> row{r.label, format_rate(r.visor->uncond), format_rate(r.visor->cond),
                                 format_rate(r.visor->oa)};
    for (std::size_t k = 0; k < k_max; ++k) {
      row.push_back(k < r.visor->visor_k.size() ? format_rate(r.visor->visor_k[k]) : "n/a");
    }
    t.rows.push_back(std::move(row));
  }
  return t;
}

Table relation_table(const std::vector<MetricsReport>& reports) {
  Table t;
  t.header = {"Model"};
  for (Relation r : kRelations) t.header.push_back(std::string("Visor Score (%) ") + to_string(r));
  for (Relation r : kRelations) t.header.push_back(std::string("Object Acc (%) ") + to_string(r));
  for (const auto& rep : reports) {
    if (!rep.relations) continue;
    std::vector<std::string> row{rep.label};
    for (const auto& rr : *rep.relations) row.push_back(format_rate(rr.visor_score));
    for (const auto& rr : *rep.relations) row.push_back(format_rate(rr.object_accuracy));
    t.rows.push_back(std::move(row));
  }
  return t;
}

Table position_table(const std::vector<MetricsReport>& reports) {
  Table t;
  t.header = {"Model",    "Obj1 Pos", "Obj1 Size", "Obj2 Pos",
              "Obj2 Size", "All Pos",  "All Size",  "Pos & Size"};
  for (const auto& rep : reports) {
    if (!rep.position_size) continue;
    const auto& p = *rep.position_size;
    t.rows.push_back({rep.label, format_rate(p.obj1_pos), format_rate(p.obj1_size),
                      format_rate(p.obj2_pos), format_rate(p.obj2_size), format_rate(p.all_pos),
                      format_rate(p.all_size), format_rate(p.pos_and_size)});
  }
  return t;
}

std::string to_csv(const Table& table, char sep) {
  std::ostringstream os;
  auto line = [&](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) os << (i ? std::string(1, sep) : "") << quote(cells[i], sep);
    os << '\n';
  };
  line(table.header);
  for (const auto& r : table.rows) line(r);
  return os.str();
}

Table parse_csv(std::string_view text, char sep) {
  std::vector<std::vector<std::string>> lines;
  std::vector<std::string> cur;
  std::string cell;
  bool quoted = false;
  bool any = false;
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    any = true;
    if (quoted) {
      if (c == '"' && i + 1 < text.size() && text[i + 1] == '"') {
        cell += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        cell += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == sep) {
      cur.push_back(std::move(cell));
      cell.clear();
    } else if (c == '\n') {
      cur.push_back(std::move(cell));
      cell.clear();
      lines.push_back(std::move(cur));
      cur.clear();
      any = false;
    } else if (c != '\r') {
      cell += c;
    }
  }
  if (quoted) throw MetricsError("SchemaError", "unterminated quoted CSV field");
  if (any) {
    cur.push_back(std::move(cell));
    lines.push_back(std::move(cur));
  }
  Table t;
  if (lines.empty()) return t;
  t.header = std::move(lines.front());
  for (std::size_t i = 1; i < lines.size(); ++i) {
    if (lines[i].size() != t.header.size()) {
      throw MetricsError("SchemaError", "CSV row " + std::to_string(i) + " has " +
                                            std::to_string(lines[i].size()) + " cells, header has " +
                                            std::to_string(t.header.size()));
    }
    t.rows.push_back(std::move(lines[i]));
  }
  return t;
}

std::string to_text(const Table& table) {
  std::vector<std::size_t> width(table.header.size(), 0);
  auto measure = [&](const std::vector<std::string>& r) {
    for (std::size_t i = 0; i < r.size() && i < width.size(); ++i) width[i] = std::max(width[i], r[i].size());
  };
  measure(table.header);
  for (const auto& r : table.rows) measure(r);
  std::ostringstream os;
  auto line = [&](const std::vector<std::string>& r) {
    for (std::size_t i = 0; i < r.size(); ++i) {
      if (i) os << "  ";
      // first column left-aligned, numbers right-aligned
      const std::size_t pad = width[i] - r[i].size();
      if (i == 0) {
        os << r[i];
        if (i + 1 < r.size()) os << std::string(pad, ' ');
      } else {
        os << std::string(pad, ' ') << r[i];
      }
    }
    os << '\n';
  };
  line(table.header);
  for (const auto& r : table.rows) line(r);
  return os.str();
}

std::vector<std::filesystem::path> emit_report(const std::vector<MetricsReport>& reports,
                                               const std::filesystem::path& dir,
                                               ReportFormat format) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw IoError("cannot create '" + dir.string() + "': " + ec.message());
  const bool any_visor = std::any_of(reports.begin(), reports.end(), [](const auto& r) { return r.visor.has_value(); });
  const bool any_rel = std::any_of(reports.begin(), reports.end(), [](const auto& r) { return r.relations.has_value(); });
  const bool any_pos = std::any_of(reports.begin(), reports.end(), [](const auto& r) { return r.position_size.has_value(); });
  std::vector<std::pair<std::string, Table>> tables;
  if (any_visor || reports.empty()) tables.emplace_back("visor", visor_table(reports));
  if (any_rel) tables.emplace_back("relations", relation_table(reports));
  if (any_pos) tables.emplace_back("position_size", position_table(reports));

  std::vector<std::filesystem::path> out;
  for (const auto& [name, table] : tables) {
    std::filesystem::path path;
    std::string text;
    switch (format) {
      case ReportFormat::kCsv:
        path = dir / (name + ".csv");
        text = to_csv(table, ',');
        break;
      case ReportFormat::kTsv:
        path = dir / (name + ".tsv");
        text = to_csv(table, '\t');
        break;
      case ReportFormat::kText:
        path = dir / (name + ".txt");
        text = to_text(table);
        break;
    }
    write_file(path, text);
    out.push_back(path);
  }
  return out;
}

}  // namespace sketchguide::metrics

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
#include "sketchguide/tikz/parser.hpp"

#include <array>
#include <cmath>
#include <string_view>
#include <utility>

#include "sketchguide/numfmt.hpp"

namespace sketchguide::tikz {

const char* to_string(CommandKind kind) {
  switch (kind) {
    case CommandKind::kFillCircle:
      return "FillCircle";
    case CommandKind::kFillRect:
      return "FillRect";
    case CommandKind::kFillPolygon:
      return "FillPolygon";
    case CommandKind::kStrokePolyline:
      return "StrokePolyline";
    case CommandKind::kStrokePolygon:
      return "StrokePolygon";
    case CommandKind::kStrokeCircle:
      return "StrokeCircle";
    case CommandKind::kStrokeRect:
      return "StrokeRect";
  }
  return "?";
}

bool is_filled(CommandKind kind) {
  return kind == CommandKind::kFillCircle || kind == CommandKind::kFillRect ||
         kind == CommandKind::kFillPolygon;
}

namespace {

constexpr double kSoftMin = -1.0;
constexpr double kSoftMax = 6.12;

struct NamedWidth {
  std::string_view key;
  double pt;
};

// TikZ's predefined line widths.
constexpr std::array<NamedWidth, 7> kNamedWidths{{
    {"ultra thin", 0.1},
    {"very thin", 0.2},
    {"thin", 0.4},
    {"semithick", 0.6},
    {"thick", 0.8},
    {"very thick", 1.2},
    {"ultra thick", 1.6},
}};

// Recognised but irrelevant to a binary raster.
constexpr std::array<std::string_view, 18> kIgnoredKeys{{
    "solid", "dashed", "dotted", "densely dashed", "densely dotted",
    "loosely dashed", "loosely dotted", "dash dot", "rounded corners",
    "sharp corners", "opacity", "fill opacity", "draw opacity", "line cap",
    "line join", "even odd rule", "nonzero rule", "transparent",
}};

bool is_known_key(std::string_view key) {
  if (key == "fill" || key == "draw" || key == "color" || key == "line width" ||
      key == "use as bounding box" || key == "radius") {
    return true;
  }
  for (const auto& w : kNamedWidths) {
    if (w.key == key) return true;
  }
  for (auto k : kIgnoredKeys) {
    if (k == key) return true;
  }
  return false;
}

bool looks_like_color(std::string_view key) {
  if (key.empty()) return false;
  for (char c : key) {
    if (c == ' ' || c == '=' || c == '{' || c == '}') return false;
  }
  return true;
}

enum class StatementKind { kFill, kDraw, kPath, kBoundingBox };

struct Paint {
  // nullopt: option absent. "": present without value.
  std::optional<std::string> fill;
  std::optional<std::string> draw;
  std::optional<std::string> color;
  double line_width_pt = kDefaultLineWidthPt;
  bool bounding_box = false;
};

enum class SegmentKind { kCircle, kRect, kLine };

struct Subpath {
  SegmentKind kind = SegmentKind::kLine;
  std::vector<Point> points;
  double radius = 0.0;
  bool closed = false;
  const Token* start = nullptr;
};

class Parser {
 public:
  explicit Parser(std::span<const Token> tokens) : toks_(tokens) {}

  SketchProgram run() {
    while (pos_ < toks_.size() &&
           !(toks_[pos_].kind == TokenKind::kBeginEnv && toks_[pos_].text == "tikzpicture")) {
      ++pos_;
    }
    if (pos_ >= toks_.size()) {
      throw ParseError(ErrorCode::kMissingEnvironment,
                       "no \\begin{tikzpicture} ... \\end{tikzpicture} block", 1, 1);
    }
    const Token& begin = toks_[pos_++];
    if (at(TokenKind::kOptions)) {
      for (const auto& opt : toks_[pos_].options) {
        warn("UnknownOption", "tikzpicture option '" + opt.key + "' ignored", toks_[pos_]);
      }
      ++pos_;
    }

    bool closed = false;
    while (pos_ < toks_.size()) {
      const Token& t = toks_[pos_];
      if (t.kind == TokenKind::kEndEnv && t.text == "tikzpicture") {
        closed = true;
        ++pos_;
        break;
      }
      switch (t.kind) {
        case TokenKind::kSemicolon:
          ++pos_;
          break;
        case TokenKind::kCommand:
          statement();
          break;
        case TokenKind::kBeginEnv:
          throw ParseError(ErrorCode::kUnsupportedConstruct,
                           "environment '" + t.text + "' inside tikzpicture is not supported",
                           t.line, t.column);
        case TokenKind::kEndEnv:
          throw ParseError(ErrorCode::kMalformedCommand,
                           "\\end{" + t.text + "} does not match \\begin{tikzpicture}", t.line,
                           t.column);
        default:
          throw ParseError(ErrorCode::kMalformedCommand,
                           "unexpected " + to_string(t) + " outside of a statement", t.line,
                           t.column);
      }
    }
    if (!closed) {
      throw ParseError(ErrorCode::kMissingEnvironment,
                       "\\begin{tikzpicture} is never closed by \\end{tikzpicture}",
                       begin.line, begin.column);
    }
    if (!have_bbox_) {
      Diagnostic d{"DefaultBoundingBox",
                   "no bounding box declared; using (0,0) rectangle (5.12,5.12)", begin.line,
                   begin.column};
      program_.warnings.push_back(std::move(d));
    }
    program_.bounding_box_defaulted = !have_bbox_;
    return std::move(program_);
  }

 private:
  bool at(TokenKind kind) const { return pos_ < toks_.size() && toks_[pos_].kind == kind; }

  void warn(std::string code, std::string message, const Token& where) {
    program_.warnings.push_back(
        Diagnostic{std::move(code), std::move(message), where.line, where.column});
  }

  [[noreturn]] void malformed(const Token& stmt, const std::string& message) const {
    throw ParseError(ErrorCode::kMalformedCommand, message, stmt.line, stmt.column);
  }

  [[noreturn]] void unsupported(const Token& where, const std::string& what) const {
    throw ParseError(ErrorCode::kUnsupportedConstruct, what + " is not supported", where.line,
                     where.column);
  }

  double length_in_pt(const Token& stmt, const std::string& text) const {
    std::vector<Token> t;
    try {
      t = tokenize("(" + text + ")");
    } catch (const ParseError&) {
      malformed(stmt, "invalid line width '" + text + "'");
    }
    if (t.size() != 1 || t[0].kind != TokenKind::kLength) {
      unsupported(stmt, "line width expression '" + text + "'");
    }
    double v = t[0].length;
    if (t[0].unit == LengthUnit::kCm) v *= kPtPerCm;
    return v;
  }

  double radius_in_cm(const Token& stmt, const std::string& text) const {
    std::vector<Token> t;
    try {
      t = tokenize("(" + text + ")");
    } catch (const ParseError&) {
      malformed(stmt, "invalid circle radius '" + text + "'");
    }
    if (t.size() != 1 || t[0].kind != TokenKind::kLength) {
      unsupported(stmt, "circle radius expression '" + text + "'");
    }
    return t[0].unit == LengthUnit::kPt ? t[0].length / kPtPerCm : t[0].length;
  }

  Paint read_paint(const Token& stmt, const std::vector<Option>& options) {
    Paint p;
    for (const auto& opt : options) {
      const std::string& k = opt.key;
      if (k == "fill") {
        p.fill = opt.value.value_or("");
      } else if (k == "draw") {
        p.draw = opt.value.value_or("");
      } else if (k == "color") {
        if (!opt.value || opt.value->empty()) malformed(stmt, "'color' needs a value");
        p.color = *opt.value;
      } else if (k == "line width") {
        if (!opt.value) malformed(stmt, "'line width' needs a value");
        double w = length_in_pt(stmt, *opt.value);
        if (!(w > 0.0)) malformed(stmt, "line width must be positive");
        p.line_width_pt = w;
      } else if (k == "use as bounding box") {
        p.bounding_box = true;
      } else if (k == "radius") {
        warn("UnknownOption", "option 'radius' only applies to 'circle'", stmt);
      } else {
        bool named = false;
        for (const auto& w : kNamedWidths) {
          if (w.key == k && !opt.value) {
            p.line_width_pt = w.pt;
            named = true;
          }
        }
        if (named) continue;
        bool ignored = false;
        for (auto key : kIgnoredKeys) {
          if (key == k) ignored = true;
        }
        if (ignored) {
          warn("IgnoredOption", "option '" + k + "' has no effect on the raster", stmt);
        } else if (!opt.value && looks_like_color(k)) {
          p.color = k;
        } else {
          warn("UnknownOption", "unknown option '" + k + "' ignored", stmt);
        }
      }
    }
    return p;
  }

  static std::optional<std::string> resolve(const std::optional<std::string>& explicit_value,
                                            const std::optional<std::string>& color,
                                            bool enabled_by_command) {
    if (explicit_value) {
      if (*explicit_value == "none") return std::nullopt;
      if (!explicit_value->empty()) return *explicit_value;
      return color.value_or("black");
    }
    if (enabled_by_command) return color.value_or("black");
    return std::nullopt;
  }

  void check_point(const Point& p, const Token& where) {
    if (p.x < kSoftMin || p.x > kSoftMax || p.y < kSoftMin || p.y > kSoftMax) {
      warn("CoordinateOutOfRange",
           "coordinate (" + format_shortest(p.x) + "," + format_shortest(p.y) +
               ") lies outside the expected sketch range",
           where);
    }
  }

  // Reads one path up to (and including) the terminating ';'.
  std::vector<Subpath> read_path(const Token& stmt) {
    std::vector<Subpath> subpaths;
    auto reject = [&](const Token& t) -> void {
      switch (t.kind) {
        case TokenKind::kParenExpr:
          unsupported(t, "coordinate expression '(" + t.text + ")'");
        case TokenKind::kWord:
          unsupported(t, "path operation '" + t.text + "'");
        case TokenKind::kSymbol:
          if (t.text == "..") unsupported(t, "curve operation '..'");
          if (t.text == "-|" || t.text == "|-") unsupported(t, "path operation '" + t.text + "'");
          if (t.text == "+" || t.text == "++") unsupported(t, "relative coordinate '" + t.text + "'");
          malformed(stmt, "unexpected '" + t.text + "' in path");
        case TokenKind::kCommand:
        case TokenKind::kBeginEnv:
        case TokenKind::kEndEnv:
          malformed(stmt, "statement is missing its terminating ';'");
        case TokenKind::kOptions:
          unsupported(t, "option list inside a path");
        case TokenKind::kLength:
          malformed(stmt, "unexpected length '(" + t.text + ")' in path");
        default:
          malformed(stmt, "unexpected " + to_string(t) + " in path");
      }
    };

    auto expect_coordinate = [&]() -> Point {
      if (pos_ >= toks_.size()) malformed(stmt, "statement is missing its terminating ';'");
      const Token& t = toks_[pos_];
      if (t.kind != TokenKind::kCoordinate) {
        if (t.kind == TokenKind::kSemicolon) malformed(stmt, "path ends where a coordinate is expected");
        reject(t);
      }
      ++pos_;
      Point p{t.x, t.y};
      check_point(p, t);
      return p;
    };

    while (true) {
      if (pos_ >= toks_.size()) malformed(stmt, "statement is missing its terminating ';'");
      const Token& t = toks_[pos_];
      if (t.kind == TokenKind::kSemicolon) {
        ++pos_;
        break;
      }
      if (t.kind != TokenKind::kCoordinate) reject(t);

      Subpath sp;
      sp.start = &t;
      sp.points.push_back(expect_coordinate());

      if (at(TokenKind::kCircle)) {
        ++pos_;
        sp.kind = SegmentKind::kCircle;
        if (at(TokenKind::kLength)) {
          const Token& r = toks_[pos_++];
          sp.radius = r.unit == LengthUnit::kPt ? r.length / kPtPerCm : r.length;
        } else if (at(TokenKind::kOptions)) {
          const Token& o = toks_[pos_++];
          std::optional<double> radius;
          for (const auto& opt : o.options) {
            if (opt.key != "radius" || !opt.value) {
              unsupported(o, "circle option '" + opt.key + "'");
            }
            radius = radius_in_cm(stmt, *opt.value);
          }
          if (!radius) malformed(stmt, "circle needs a radius");
          sp.radius = *radius;
        } else {
          if (pos_ < toks_.size() && toks_[pos_].kind == TokenKind::kParenExpr) {
            unsupported(toks_[pos_], "circle size '(" + toks_[pos_].text + ")'");
          }
          malformed(stmt, "circle needs a radius such as '(0.25)'");
        }
        if (!(sp.radius > 0.0)) malformed(stmt, "circle radius must be positive");
      } else if (at(TokenKind::kRectangle)) {
        ++pos_;
        sp.kind = SegmentKind::kRect;
        sp.points.push_back(expect_coordinate());
      } else if (at(TokenKind::kDashDash)) {
        sp.kind = SegmentKind::kLine;
        while (at(TokenKind::kDashDash)) {
          ++pos_;
          if (at(TokenKind::kCycle)) {
            ++pos_;
            sp.closed = true;
            break;
          }
          sp.points.push_back(expect_coordinate());
        }
      } else {
        if (pos_ < toks_.size() && toks_[pos_].kind != TokenKind::kSemicolon &&
            toks_[pos_].kind != TokenKind::kCoordinate) {
          reject(toks_[pos_]);
        }
        malformed(stmt, "coordinate is not followed by a drawing operation");
      }

      if (pos_ < toks_.size()) {
        const Token& next = toks_[pos_];
        if (next.kind == TokenKind::kCircle || next.kind == TokenKind::kRectangle ||
            next.kind == TokenKind::kDashDash || next.kind == TokenKind::kCycle) {
          const bool dangling = next.kind == TokenKind::kDashDash &&
                                (pos_ + 1 >= toks_.size() || (toks_[pos_ + 1].kind != TokenKind::kCoordinate &&
                                                             toks_[pos_ + 1].kind != TokenKind::kCycle));
          if (dangling) malformed(next, "'--' is not followed by a coordinate");
          unsupported(next, "mixing '" + next.text + "' into a previous path segment");
        }
      }
      subpaths.push_back(std::move(sp));
    }
    return subpaths;
  }

  void statement() {
    const Token& stmt = toks_[pos_];
    StatementKind kind;
    if (stmt.text == "fill") {
      kind = StatementKind::kFill;
    } else if (stmt.text == "draw") {
      kind = StatementKind::kDraw;
    } else if (stmt.text == "path") {
      kind = StatementKind::kPath;
    } else if (stmt.text == "useasboundingbox") {
      kind = StatementKind::kBoundingBox;
    } else {
      unsupported(stmt, "command '\\" + stmt.text + "'");
    }
    ++pos_;

    Paint paint;
    if (at(TokenKind::kOptions)) {
      paint = read_paint(stmt, toks_[pos_].options);
      ++pos_;
    }
    if (paint.bounding_box) kind = StatementKind::kBoundingBox;

    std::vector<Subpath> subpaths = read_path(stmt);
    if (subpaths.empty()) malformed(stmt, "statement has an empty path");

    if (kind == StatementKind::kBoundingBox) {
      if (subpaths.size() != 1 || subpaths[0].kind != SegmentKind::kRect) {
        malformed(stmt, "bounding box must be a single '(a) rectangle (b)' path");
      }
      if (have_bbox_) malformed(stmt, "bounding box declared more than once");
      Rect box = Rect::from_corners(subpaths[0].points[0], subpaths[0].points[1]);
      if (!(box.width() > 0.0) || !(box.height() > 0.0)) {
        malformed(stmt, "bounding box has zero area");
      }
      program_.bounding_box = box;
      have_bbox_ = true;
      if (paint.fill || paint.draw) {
        warn("IgnoredOption", "paint options on the bounding box path are ignored", stmt);
      }
      return;
    }

    Style style;
    style.line_width_pt = paint.line_width_pt;
    style.fill_color = resolve(paint.fill, paint.color, kind == StatementKind::kFill);
    style.stroke_color = resolve(paint.draw, paint.color, kind == StatementKind::kDraw);
    if (!style.fill_color && !style.stroke_color) {
      warn("InvisiblePath", "path is neither drawn nor filled", stmt);
      return;
    }

    for (auto& sp : subpaths) {
      SketchCommand cmd;
      cmd.style = style;
      cmd.points = std::move(sp.points);
      const bool filled = style.fill_color.has_value();
      switch (sp.kind) {
        case SegmentKind::kCircle:
          cmd.kind = filled ? CommandKind::kFillCircle : CommandKind::kStrokeCircle;
          cmd.radius = sp.radius;
          break;
        case SegmentKind::kRect:
          cmd.kind = filled ? CommandKind::kFillRect : CommandKind::kStrokeRect;
          break;
        case SegmentKind::kLine:
          if (sp.closed) {
            if (cmd.points.size() < 3) malformed(stmt, "closed path needs at least 3 points");
            cmd.kind = filled ? CommandKind::kFillPolygon : CommandKind::kStrokePolygon;
          } else {
            if (filled) malformed(stmt, "filled path must be closed with '-- cycle'");
            if (cmd.points.size() < 2) malformed(stmt, "line needs at least 2 points");
            cmd.kind = CommandKind::kStrokePolyline;
          }
          break;
      }
      program_.commands.push_back(std::move(cmd));
      // The first command points at its statement; later subpaths of the
      // same statement point at their own first coordinate.
      const Token& origin = (&sp == &subpaths.front()) ? stmt : *sp.start;
      program_.spans.push_back(SourceSpan{origin.line, origin.column});
    }
  }

  std::span<const Token> toks_;
  std::size_t pos_ = 0;
  bool have_bbox_ = false;
  SketchProgram program_;
};

bool printable_as_bare_color(const std::string& c) {
  if (c.empty() || is_known_key(c)) return false;
  if (!std::isalpha(static_cast<unsigned char>(c[0]))) return false;
  for (char ch : c) {
    if (!(std::isalnum(static_cast<unsigned char>(ch)) || ch == '!' || ch == '.')) return false;
  }
  return true;
}

std::string color_option(const std::string& c) {
  return printable_as_bare_color(c) ? c : "color=" + c;
}

std::string point_text(const Point& p) {
  return "(" + format_shortest(p.x) + "," + format_shortest(p.y) + ")";
}

}  // namespace

SketchProgram parse(std::span<const Token> tokens) { return Parser(tokens).run(); }

SketchProgram parse_source(std::string_view source) {
  auto tokens = tokenize(source);
  return parse(tokens);
}

std::string print_command(const SketchCommand& command) {
  const Style& st = command.style;
  std::string opts;
  std::string head;
  if (st.fill_color && !st.stroke_color) {
    head = "\\fill";
    opts = color_option(*st.fill_color);
  } else {
    head = "\\draw";
    opts = color_option(st.stroke_color.value_or("black"));
    if (st.fill_color) opts += ", fill=" + *st.fill_color;
  }
  if (st.line_width_pt != kDefaultLineWidthPt) {
    opts += ", line width=" + format_shortest(st.line_width_pt) + "pt";
  }

  std::string path;
  const auto& pts = command.points;
  switch (command.kind) {
    case CommandKind::kFillCircle:
    case CommandKind::kStrokeCircle:
      path = point_text(pts.at(0)) + " circle (" + format_shortest(command.radius) + ")";
      break;
    case CommandKind::kFillRect:
    case CommandKind::kStrokeRect:
      path = point_text(pts.at(0)) + " rectangle " + point_text(pts.at(1));
      break;
    case CommandKind::kFillPolygon:
    case CommandKind::kStrokePolygon:
    case CommandKind::kStrokePolyline:
      for (std::size_t i = 0; i < pts.size(); ++i) {
        if (i) path += " -- ";
        path += point_text(pts[i]);
      }
      if (command.kind != CommandKind::kStrokePolyline) path += " -- cycle";
      break;
  }
  return head + "[" + opts + "] " + path + ";";
}

std::string pretty_print(const SketchProgram& program, Layout layout) {
  const bool multi = layout == Layout::kMultiline;
  const std::string sep = multi ? "\n" : "";
  const std::string indent = multi ? "  " : "";
  std::string out = "\\begin{tikzpicture}" + sep;
  out += indent + "\\useasboundingbox " + point_text(program.bounding_box.min) +
         " rectangle " + point_text(program.bounding_box.max) + ";" + sep;
  for (const auto& cmd : program.commands) out += indent + print_command(cmd) + sep;
  out += "\\end{tikzpicture}";
  if (multi) out += "\n";
  return out;
}

}  // namespace sketchguide::tikz

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
#include <gtest/gtest.h>

#include <random>
#include <string>

#include "sketchguide/tikz/errors.hpp"
#include "sketchguide/tikz/lexer.hpp"
#include "sketchguide/tikz/parser.hpp"
#include "test_support.hpp"

namespace sketchguide::tikz {
namespace {

using sketchguide::testing::data_dir;
using sketchguide::testing::kExampleSnippets;
using sketchguide::testing::slurp;

SketchProgram load(const char* name) { return parse_source(slurp(data_dir() / "tikz" / name)); }

TEST(Lexer, FillCircleTokens) {
  EXPECT_EQ(to_string(tokenize("\\fill[red] (1,2) circle (0.25);")),
            "[FILL, OPTS(red), COORD(1,2), CIRCLE, LEN(0.25), SEMI]");
}

TEST(Lexer, CommentOnlyIsEmpty) { EXPECT_TRUE(tokenize("% comment\n").empty()); }

TEST(Lexer, DrawWithLineWidth) {
  EXPECT_EQ(to_string(tokenize("\\draw[red, line width=2pt] (4,2.5) -- (3.5,1);")),
            "[DRAW, OPTS(red; line width=2pt), COORD(4,2.5), DASHDASH, COORD(3.5,1), SEMI]");
}

TEST(Lexer, PositionsAreOneBased) {
  const auto toks = tokenize("% c\n  \\fill[red] (1,2) circle (0.25);");
  ASSERT_FALSE(toks.empty());
  EXPECT_EQ(toks[0].line, 2);
  EXPECT_EQ(toks[0].column, 3);
}

TEST(Lexer, UnterminatedOptions) {
  try {
    tokenize("\\fill[red (1,2) circle (0.25);");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.kind(), ErrorCode::kUnterminatedOptionList);
    EXPECT_EQ(e.line(), 1);
  }
}

TEST(Lexer, SplitOptionsHonoursBraces) {
  const auto opts = split_options("red, line width=2pt, label={a, b}");
  ASSERT_EQ(opts.size(), 3u);
  EXPECT_EQ(opts[1].key, "line width");
  EXPECT_EQ(opts[1].value, "2pt");
  EXPECT_EQ(opts[2].value, "{a, b}");
}

TEST(Parser, PersonBusSnippet) {
  const auto p = load("example_person_bus.tikz");
  EXPECT_EQ(p.bounding_box, default_canvas());
  EXPECT_FALSE(p.bounding_box_defaulted);
  // The snippet as printed has seven drawing statements.
  ASSERT_EQ(p.commands.size(), 7u);
  EXPECT_EQ(p.commands[0].kind, CommandKind::kFillCircle);
  EXPECT_EQ(p.commands[1].kind, CommandKind::kFillRect);
  EXPECT_EQ(p.commands[2].kind, CommandKind::kFillPolygon);
  EXPECT_EQ(p.commands[3].kind, CommandKind::kFillPolygon);
  EXPECT_EQ(p.commands[4].kind, CommandKind::kFillRect);
  EXPECT_EQ(p.commands[0].points[0], (Point{1, 1}));
  EXPECT_DOUBLE_EQ(p.commands[0].radius, 0.5);
  EXPECT_EQ(p.commands[0].style.fill_color, "red");
  // Triangle reaches y = -0.5: accepted at parse time.
  EXPECT_EQ(p.commands[3].points[1], (Point{1.5, -0.5}));
  EXPECT_TRUE(p.warnings.empty());
}

TEST(Parser, TruckPersonSnippet) {
  const auto p = load("example_truck_person.tikz");
  ASSERT_EQ(p.commands.size(), 11u);
  for (int i = 7; i < 11; ++i) {
    EXPECT_EQ(p.commands[i].kind, CommandKind::kStrokePolyline);
    EXPECT_DOUBLE_EQ(p.commands[i].style.line_width_pt, 2.0);
    EXPECT_EQ(p.commands[i].style.stroke_color, "red");
  }
}

TEST(Parser, PersonBoatSnippet) {
  const auto p = load("example_person_boat.tikz");
  ASSERT_EQ(p.commands.size(), 7u);
  EXPECT_FALSE(p.bounding_box_defaulted);
  EXPECT_EQ(p.commands[0].kind, CommandKind::kFillCircle);
  EXPECT_EQ(p.commands[0].style.stroke_color, "red");
  EXPECT_EQ(p.commands[0].style.fill_color, "red");
  int polygons = 0;
  for (const auto& c : p.commands) polygons += c.kind == CommandKind::kFillPolygon;
  EXPECT_EQ(polygons, 1);
  const auto& boat = p.commands.back();
  EXPECT_EQ(boat.kind, CommandKind::kFillPolygon);
  ASSERT_EQ(boat.points.size(), 4u);
  EXPECT_EQ(boat.points[0], (Point{3.5, 0.5}));
  EXPECT_EQ(boat.points[3], (Point{3.88, 1}));
}

TEST(Parser, AllExampleSnippetsParseCleanly) {
  for (const char* name : kExampleSnippets) {
    SCOPED_TRACE(name);
    const auto p = load(name);
    EXPECT_TRUE(p.warnings.empty());
    EXPECT_EQ(p.spans.size(), p.commands.size());
  }
}

TEST(Parser, EmptyEnvironment) {
  const auto p = parse_source("\\begin{tikzpicture}\\end{tikzpicture}");
  EXPECT_TRUE(p.commands.empty());
  EXPECT_TRUE(p.bounding_box_defaulted);
  EXPECT_EQ(p.bounding_box, default_canvas());
}

TEST(Parser, MissingBoundingBoxWarns) {
  const auto p = parse_source("\\begin{tikzpicture}\\fill[red] (1,1) circle (0.5);\\end{tikzpicture}");
  EXPECT_TRUE(p.bounding_box_defaulted);
  ASSERT_FALSE(p.warnings.empty());
}

TEST(Parser, SourceOrderPreserved) {
  const auto p = parse_source(
      "\\begin{tikzpicture}\n\\fill[red] (3,3) circle (0.1);\n\\fill[red] (1,1) circle (0.1);\n"
      "\\end{tikzpicture}");
  ASSERT_EQ(p.commands.size(), 2u);
  EXPECT_EQ(p.commands[0].points[0].x, 3);
  EXPECT_EQ(p.spans[0].line, 2);
  EXPECT_EQ(p.spans[1].line, 3);
}

TEST(Parser, ExpressionsAreUnsupported) {
  try {
    parse_source("\\begin{tikzpicture}\\fill[red] (1+2,0) circle (0.5);\\end{tikzpicture}");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.kind(), ErrorCode::kUnsupportedConstruct);
  }
}

TEST(Parser, MissingEnvironment) {
  try {
    parse_source("\\fill[red] (1,1) circle (0.5);");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.kind(), ErrorCode::kMissingEnvironment);
  }
}

TEST(Parser, NodeIsUnsupported) {
  EXPECT_THROW(parse_source("\\begin{tikzpicture}\\node at (1,1) {x};\\end{tikzpicture}"), ParseError);
}

TEST(Parser, UnknownOptionIsWarning) {
  const auto p = parse_source(
      "\\begin{tikzpicture}\\useasboundingbox (0,0) rectangle (5.12,5.12);"
      "\\fill[red, opacity=0.5] (1,1) circle (0.5);\\end{tikzpicture}");
  ASSERT_EQ(p.commands.size(), 1u);
  EXPECT_FALSE(p.warnings.empty());
}

TEST(Printer, FillCircle) {
  SketchCommand c;
  c.kind = CommandKind::kFillCircle;
  c.points = {{1, 2}};
  c.radius = 0.25;
  c.style.fill_color = "red";
  EXPECT_EQ(print_command(c), "\\fill[red] (1,2) circle (0.25);");
}

TEST(Printer, EmptyProgram) {
  EXPECT_EQ(pretty_print(SketchProgram{}),
            "\\begin{tikzpicture}\\useasboundingbox (0,0) rectangle (5.12,5.12);\\end{tikzpicture}");
}

TEST(Printer, RoundTripGoldenCorpus) {
  for (const char* name : kExampleSnippets) {
    SCOPED_TRACE(name);
    const auto p = load(name);
    EXPECT_EQ(parse_source(pretty_print(p, Layout::kCompact)), p);
    EXPECT_EQ(parse_source(pretty_print(p, Layout::kMultiline)), p);
  }
}

// Random programs built straight from the AST, so the printer sees shapes the
// corpus lacks.
SketchProgram random_program(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> coord(-1.0, 6.0);
  std::uniform_int_distribution<int> kind(0, 6);
  std::uniform_int_distribution<int> npts(3, 7);
  auto q = [&](double v) { return std::round(v * 1000.0) / 1000.0; };
  SketchProgram p;
  p.bounding_box_defaulted = false;
  const int n = std::uniform_int_distribution<int>(0, 12)(rng);
  for (int i = 0; i < n; ++i) {
    SketchCommand c;
    c.kind = static_cast<CommandKind>(kind(rng));
    const bool filled = is_filled(c.kind);
    if (filled) c.style.fill_color = "red";
    if (!filled || rng() % 3 == 0) c.style.stroke_color = (rng() % 2) ? "red" : "blue";
    if (rng() % 4 == 0) c.style.line_width_pt = q(std::uniform_real_distribution<double>(0.1, 5)(rng));
    switch (c.kind) {
      case CommandKind::kFillCircle:
      case CommandKind::kStrokeCircle:
        c.points = {{q(coord(rng)), q(coord(rng))}};
        c.radius = q(std::uniform_real_distribution<double>(0.01, 2)(rng));
        break;
      case CommandKind::kFillRect:
      case CommandKind::kStrokeRect:
        c.points = {{q(coord(rng)), q(coord(rng))}, {q(coord(rng)), q(coord(rng))}};
        break;
      case CommandKind::kStrokePolyline:
        c.points.resize(static_cast<std::size_t>(npts(rng) - 1));
        for (auto& pt : c.points) pt = {q(coord(rng)), q(coord(rng))};
        break;
      default:
        c.points.resize(static_cast<std::size_t>(npts(rng)));
        for (auto& pt : c.points) pt = {q(coord(rng)), q(coord(rng))};
        break;
    }
    p.commands.push_back(c);
  }
  return p;
}

TEST(PrinterProperty, RoundTripRandomPrograms) {
  std::mt19937_64 rng(1234);
  for (int i = 0; i < 300; ++i) {
    const auto p = random_program(rng);
    const std::string text = pretty_print(p, i % 2 ? Layout::kMultiline : Layout::kCompact);
    SketchProgram back;
    ASSERT_NO_THROW(back = parse_source(text)) << text;
    ASSERT_EQ(back, p) << text;
  }
}

// Any byte string either parses or raises a structured error.
TEST(ParserProperty, TotalOnArbitraryBytes) {
  std::mt19937_64 rng(99);
  const std::string alphabet = "\\fildrawpthcylerng{}[]()--,;.%=0123456789 \n\tabc-+ek";
  const std::string base = slurp(data_dir() / "tikz" / "example_truck_person.tikz");
  for (int i = 0; i < 3000; ++i) {
    std::string s;
    if (i % 3 == 0) {
      const std::size_t len = rng() % 200;
      for (std::size_t k = 0; k < len; ++k) s.push_back(static_cast<char>(rng() % 256));
    } else if (i % 3 == 1) {
      const std::size_t len = rng() % 300;
      for (std::size_t k = 0; k < len; ++k) s.push_back(alphabet[rng() % alphabet.size()]);
      if (rng() % 2) s = "\\begin{tikzpicture}" + s + "\\end{tikzpicture}";
    } else {
      s = base;
      const int edits = 1 + static_cast<int>(rng() % 6);
      for (int e = 0; e < edits && !s.empty(); ++e) {
        const std::size_t pos = rng() % s.size();
        switch (rng() % 3) {
          case 0: s.erase(pos, 1 + rng() % 4); break;
          case 1: s.insert(pos, 1, alphabet[rng() % alphabet.size()]); break;
          default: s[pos] = static_cast<char>(rng() % 256); break;
        }
      }
    }
    try {
      (void)parse_source(s);
    } catch (const ParseError& e) {
      EXPECT_GE(e.line(), 1);
      EXPECT_GE(e.column(), 1);
    }
  }
}

// A broken statement among valid ones is reported on its own line, at or
// after its first column.
TEST(ParserProperty, MalformedSpanInsideStatement) {
  const std::vector<std::string> broken = {
      "\\fill[red] (1,1) circle (0.5;",
      "\\fill[red] (1,1) rectangle;",
      "\\fill[red] (1,1) -- (2,2) -- cycle -- ;",
      "\\draw[red] (1,1) --;",
      "\\fill[red] circle (0.5);",
      "\\fill[red] (1,1) circle;",
  };
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t before = rng() % 4;
    const std::string pad(rng() % 5, ' ');
    std::string src = "\\begin{tikzpicture}\n";
    for (std::size_t k = 0; k < before; ++k) src += "\\fill[red] (1,1) circle (0.5);\n";
    const std::string& bad = broken[trial % broken.size()];
    src += pad + bad + "\n\\fill[red] (2,2) circle (0.5);\n\\end{tikzpicture}\n";
    const int line = 2 + static_cast<int>(before);
    try {
      (void)parse_source(src);
      ADD_FAILURE() << "accepted: " << bad;
    } catch (const ParseError& e) {
      EXPECT_EQ(e.kind(), ErrorCode::kMalformedCommand) << bad;
      EXPECT_EQ(e.line(), line) << bad;
      EXPECT_GE(e.column(), static_cast<int>(pad.size()) + 1) << bad;
      EXPECT_LE(e.column(), static_cast<int>(pad.size() + bad.size())) << bad;
    }
  }
}

}  // namespace
}  // namespace sketchguide::tikz

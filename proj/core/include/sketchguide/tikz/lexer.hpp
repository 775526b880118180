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
#include <string_view>
#include <vector>

#include "sketchguide/tikz/errors.hpp"

namespace sketchguide::tikz {

enum class TokenKind {
  kCommand,     // \fill, \draw, \path, \useasboundingbox, or any other \name
  kBeginEnv,    // \begin{name}
  kEndEnv,      // \end{name}
  kOptions,     // [ ... ]
  kCoordinate,  // (x,y)
  kLength,      // (r)
  kParenExpr,   // ( ... ) that is not plain numbers: (a.north), (30:1), (1+2,0)
  kDashDash,    // --
  kCircle,
  kRectangle,
  kCycle,
  kWord,        // any other bare identifier (node, arc, to, grid, ...)
  kSymbol,      // any other character run ({, }, .., -|, ...)
  kSemicolon,
};

enum class LengthUnit { kNone, kCm, kPt };

struct Option {
  std::string key;
  std::optional<std::string> value;
  friend bool operator==(const Option&, const Option&) = default;
};

struct Token {
  TokenKind kind = TokenKind::kSymbol;
  /// Command or environment name, word, symbol text, or the raw contents of
  /// an option list / parenthesis.
  std::string text;
  std::vector<Option> options;
  double x = 0.0;  // coordinate, cm
  double y = 0.0;
  double length = 0.0;  // length value in `unit`
  LengthUnit unit = LengthUnit::kNone;
  int line = 1;
  int column = 1;
};

/// Splits TikZ source into tokens. `%` comments run to end of line.
/// Throws ParseError with UnterminatedOptionList, InvalidNumber or
/// MalformedCommand (unterminated parenthesis).
std::vector<Token> tokenize(std::string_view source);

/// Compact debugging form: FILL, OPTS(red; line width=2pt), COORD(1,2),
/// CIRCLE, LEN(0.25), DASHDASH, SEMI, ...
std::string to_string(const Token& token);
std::string to_string(const std::vector<Token>& tokens);

/// Splits "key=value, key2" into options, honouring {} and [] nesting.
std::vector<Option> split_options(std::string_view body);

}  // namespace sketchguide::tikz

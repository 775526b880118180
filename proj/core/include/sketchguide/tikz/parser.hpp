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

#include <span>
#include <string>
#include <string_view>

#include "sketchguide/tikz/ast.hpp"
#include "sketchguide/tikz/errors.hpp"
#include "sketchguide/tikz/lexer.hpp"

namespace sketchguide::tikz {

/// Builds a SketchProgram from the first tikzpicture environment in
/// `tokens`. Anything before \begin{tikzpicture} or after the matching \end
/// is ignored. Throws ParseError (MissingEnvironment, MalformedCommand,
/// UnsupportedConstruct). Unknown option keys become warnings.
SketchProgram parse(std::span<const Token> tokens);

/// tokenize + parse.
SketchProgram parse_source(std::string_view source);

enum class Layout {
  kCompact,    // single line, no separators
  kMultiline,  // one statement per line, body indented
};

/// Canonical TikZ for `program`; parse_source(pretty_print(p)) == p.
std::string pretty_print(const SketchProgram& program,
                         Layout layout = Layout::kCompact);

/// Single statement, e.g. "\fill[red] (1,2) circle (0.25);".
std::string print_command(const SketchCommand& command);

}  // namespace sketchguide::tikz

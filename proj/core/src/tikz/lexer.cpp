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
#include "sketchguide/tikz/lexer.hpp"

#include <cctype>
#include <cmath>
#include <sstream>

#include "sketchguide/geometry.hpp"
#include "sketchguide/numfmt.hpp"

namespace sketchguide::tikz {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kUnterminatedOptionList:
      return "UnterminatedOptionList";
    case ErrorCode::kInvalidNumber:
      return "InvalidNumber";
    case ErrorCode::kMissingEnvironment:
      return "MissingEnvironment";
    case ErrorCode::kMalformedCommand:
      return "MalformedCommand";
    case ErrorCode::kUnsupportedConstruct:
      return "UnsupportedConstruct";
  }
  return "MalformedCommand";
}

namespace {

bool is_alpha(char c) { return std::isalpha(static_cast<unsigned char>(c)) != 0; }
bool is_digit(char c) { return c >= '0' && c <= '9'; }
bool is_space(char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v';
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && is_space(s.front())) s.remove_prefix(1);
  while (!s.empty() && is_space(s.back())) s.remove_suffix(1);
  return s;
}

// Collapses internal whitespace runs so "line   width" matches "line width".
std::string normalize_key(std::string_view s) {
  std::string out;
  bool pending_space = false;
  for (char c : trim(s)) {
    if (is_space(c)) {
      pending_space = true;
      continue;
    }
    if (pending_space && !out.empty()) out.push_back(' ');
    pending_space = false;
    out.push_back(c);
  }
  return out;
}

enum class NumberClass { kNumber, kInvalid, kExpression };

struct Classified {
  NumberClass cls = NumberClass::kInvalid;
  double value = 0.0;
  LengthUnit unit = LengthUnit::kNone;
};

bool plain_decimal(std::string_view s) {
  if (!s.empty() && (s.front() == '+' || s.front() == '-')) s.remove_prefix(1);
  if (s.empty()) return false;
  std::size_t i = 0;
  std::size_t int_digits = 0;
  while (i < s.size() && is_digit(s[i])) {
    ++i;
    ++int_digits;
  }
  std::size_t frac_digits = 0;
  if (i < s.size() && s[i] == '.') {
    ++i;
    while (i < s.size() && is_digit(s[i])) {
      ++i;
      ++frac_digits;
    }
  }
  return i == s.size() && (int_digits + frac_digits) > 0;
}

// Decimal literal with optional sign, fraction and cm/pt unit. Anything
// built only from digits, dots and one leading sign that still fails to
// parse is an invalid number; everything else is an expression.
Classified classify_number(std::string_view raw) {
  std::string_view s = trim(raw);
  Classified out;
  if (s.empty()) return out;

  std::string_view core = s;
  std::string_view unit;
  std::size_t k = core.size();
  while (k > 0 && is_alpha(core[k - 1])) --k;
  if (k < core.size() && k > 0 && (is_digit(core[k - 1]) || core[k - 1] == '.' ||
                                   is_space(core[k - 1]))) {
    unit = core.substr(k);
    core = trim(core.substr(0, k));
  }

  if (plain_decimal(core)) {
    auto v = parse_double(core);
    if (!v || !std::isfinite(*v)) return out;  // overflow -> invalid
    if (unit.empty()) {
      out.unit = LengthUnit::kNone;
    } else if (unit == "cm") {
      out.unit = LengthUnit::kCm;
    } else if (unit == "pt") {
      out.unit = LengthUnit::kPt;
    } else {
      out.cls = NumberClass::kExpression;
      return out;
    }
    out.cls = NumberClass::kNumber;
    out.value = *v;
    return out;
  }

  std::string_view body = core;
  if (!body.empty() && (body.front() == '+' || body.front() == '-')) body.remove_prefix(1);
  bool only_digits_and_dots = !body.empty();
  for (char c : body) {
    if (!is_digit(c) && c != '.') only_digits_and_dots = false;
  }
  if (core.size() == 1 && (core == "+" || core == "-" || core == ".")) {
    only_digits_and_dots = true;
  }
  out.cls = (only_digits_and_dots && unit.empty()) ? NumberClass::kInvalid
                                                  : NumberClass::kExpression;
  return out;
}

double to_cm(double value, LengthUnit unit) {
  return unit == LengthUnit::kPt ? value / kPtPerCm : value;
}

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    while (pos_ < src_.size()) {
      char c = src_[pos_];
      if (is_space(c)) {
        advance();
        continue;
      }
      if (c == '%') {
        while (pos_ < src_.size() && src_[pos_] != '\n') advance();
        continue;
      }
      Token tok;
      tok.line = line_;
      tok.column = column_;
      if (c == '\\') {
        lex_command(tok);
      } else if (c == '[') {
        lex_options(tok);
      } else if (c == '(') {
        lex_paren(tok);
      } else if (c == ';') {
        advance();
        tok.kind = TokenKind::kSemicolon;
        tok.text = ";";
      } else if (c == '-' && peek(1) == '-') {
        advance();
        advance();
        tok.kind = TokenKind::kDashDash;
        tok.text = "--";
      } else if (is_alpha(c)) {
        std::size_t start = pos_;
        while (pos_ < src_.size() && is_alpha(src_[pos_])) advance();
        tok.text = std::string(src_.substr(start, pos_ - start));
        if (tok.text == "circle") {
          tok.kind = TokenKind::kCircle;
        } else if (tok.text == "rectangle") {
          tok.kind = TokenKind::kRectangle;
        } else if (tok.text == "cycle") {
          tok.kind = TokenKind::kCycle;
        } else {
          tok.kind = TokenKind::kWord;
        }
      } else {
        lex_symbol(tok);
      }
      out.push_back(std::move(tok));
    }
    return out;
  }

 private:
  char peek(std::size_t ahead) const {
    return pos_ + ahead < src_.size() ? src_[pos_ + ahead] : '\0';
  }

  void advance() {
    if (src_[pos_] == '\n') {
      ++line_;
      column_ = 1;
    } else {
      ++column_;
    }
    ++pos_;
  }

  void lex_command(Token& tok) {
    advance();  // backslash
    std::size_t start = pos_;
    while (pos_ < src_.size() && is_alpha(src_[pos_])) advance();
    if (pos_ == start) {
      tok.kind = TokenKind::kSymbol;
      tok.text = "\\";
      if (pos_ < src_.size()) {
        tok.text.push_back(src_[pos_]);
        advance();
      }
      return;
    }
    tok.kind = TokenKind::kCommand;
    tok.text = std::string(src_.substr(start, pos_ - start));
    if (tok.text != "begin" && tok.text != "end") return;

    // \begin{name} / \end{name}; whitespace allowed before the brace.
    std::size_t save_pos = pos_;
    int save_line = line_;
    int save_col = column_;
    while (pos_ < src_.size() && is_space(src_[pos_])) advance();
    if (pos_ >= src_.size() || src_[pos_] != '{') {
      pos_ = save_pos;
      line_ = save_line;
      column_ = save_col;
      return;
    }
    advance();
    std::size_t name_start = pos_;
    while (pos_ < src_.size() && src_[pos_] != '}' && src_[pos_] != '\n') advance();
    if (pos_ >= src_.size() || src_[pos_] != '}') {
      throw ParseError(ErrorCode::kMalformedCommand,
                       "unterminated environment name after \\" + tok.text,
                       tok.line, tok.column);
    }
    std::string name(trim(src_.substr(name_start, pos_ - name_start)));
    advance();  // '}'
    tok.kind = tok.text == "begin" ? TokenKind::kBeginEnv : TokenKind::kEndEnv;
    tok.text = std::move(name);
  }

  void lex_options(Token& tok) {
    advance();  // '['
    std::size_t start = pos_;
    int depth = 0;
    while (pos_ < src_.size()) {
      char c = src_[pos_];
      if (c == '{') {
        ++depth;
      } else if (c == '}') {
        if (depth > 0) --depth;
      } else if (c == ']' && depth == 0) {
        break;
      } else if (c == ';' && depth == 0) {
        // A statement terminator inside an option list means the list was
        // never closed.
        break;
      }
      advance();
    }
    if (pos_ >= src_.size() || src_[pos_] != ']') {
      throw ParseError(ErrorCode::kUnterminatedOptionList,
                       "option list opened with '[' is never closed", tok.line,
                       tok.column);
    }
    tok.kind = TokenKind::kOptions;
    tok.text = std::string(src_.substr(start, pos_ - start));
    tok.options = split_options(tok.text);
    advance();  // ']'
  }

  void lex_paren(Token& tok) {
    advance();  // '('
    std::size_t start = pos_;
    int depth = 0;
    while (pos_ < src_.size()) {
      char c = src_[pos_];
      if (c == '(') {
        ++depth;
      } else if (c == ')') {
        if (depth == 0) break;
        --depth;
      } else if (c == ';' && depth == 0) {
        break;
      }
      advance();
    }
    if (pos_ >= src_.size() || src_[pos_] != ')') {
      throw ParseError(ErrorCode::kMalformedCommand,
                       "parenthesis opened with '(' is never closed", tok.line,
                       tok.column);
    }
    std::string_view body = src_.substr(start, pos_ - start);
    advance();  // ')'
    tok.text = std::string(body);

    std::vector<std::string_view> parts;
    int nest = 0;
    std::size_t part_start = 0;
    for (std::size_t i = 0; i < body.size(); ++i) {
      char c = body[i];
      if (c == '(' || c == '{' || c == '[') ++nest;
      if (c == ')' || c == '}' || c == ']') --nest;
      if (c == ',' && nest == 0) {
        parts.push_back(body.substr(part_start, i - part_start));
        part_start = i + 1;
      }
    }
    parts.push_back(body.substr(part_start));

    if (parts.size() > 2) {
      tok.kind = TokenKind::kParenExpr;
      return;
    }
    std::vector<Classified> nums;
    for (auto part : parts) nums.push_back(classify_number(part));
    for (const auto& n : nums) {
      if (n.cls == NumberClass::kExpression) {
        tok.kind = TokenKind::kParenExpr;
        return;
      }
    }
    for (const auto& n : nums) {
      if (n.cls == NumberClass::kInvalid) {
        throw ParseError(ErrorCode::kInvalidNumber,
                         "invalid number in '(" + std::string(body) + ")'",
                         tok.line, tok.column);
      }
    }
    if (nums.size() == 2) {
      tok.kind = TokenKind::kCoordinate;
      tok.x = to_cm(nums[0].value, nums[0].unit);
      tok.y = to_cm(nums[1].value, nums[1].unit);
    } else {
      tok.kind = TokenKind::kLength;
      tok.length = nums[0].value;
      tok.unit = nums[0].unit;
    }
  }

  void lex_symbol(Token& tok) {
    tok.kind = TokenKind::kSymbol;
    char c = src_[pos_];
    char n = peek(1);
    if ((c == '.' && n == '.') || (c == '-' && n == '|') || (c == '|' && n == '-') ||
        (c == '+' && n == '+')) {
      tok.text = std::string{c, n};
      advance();
      advance();
      return;
    }
    tok.text = std::string(1, c);
    advance();
  }

  std::string_view src_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int column_ = 1;
};

}  // namespace

std::vector<Option> split_options(std::string_view body) {
  std::vector<Option> out;
  int depth = 0;
  std::size_t start = 0;
  auto flush = [&](std::size_t end) {
    std::string_view item = trim(body.substr(start, end - start));
    if (item.empty()) return;
    std::size_t eq = std::string_view::npos;
    int d = 0;
    for (std::size_t i = 0; i < item.size(); ++i) {
      if (item[i] == '{' || item[i] == '[') ++d;
      if (item[i] == '}' || item[i] == ']') --d;
      if (item[i] == '=' && d == 0) {
        eq = i;
        break;
      }
    }
    Option opt;
    if (eq == std::string_view::npos) {
      opt.key = normalize_key(item);
    } else {
      opt.key = normalize_key(item.substr(0, eq));
      opt.value = std::string(trim(item.substr(eq + 1)));
    }
    out.push_back(std::move(opt));
  };
  for (std::size_t i = 0; i < body.size(); ++i) {
    char c = body[i];
    if (c == '{' || c == '[') ++depth;
    if (c == '}' || c == ']') --depth;
    if (c == ',' && depth == 0) {
      flush(i);
      start = i + 1;
    }
  }
  flush(body.size());
  return out;
}

std::vector<Token> tokenize(std::string_view source) { return Lexer(source).run(); }

std::string to_string(const Token& token) {
  switch (token.kind) {
    case TokenKind::kCommand: {
      std::string upper;
      for (char c : token.text) {
        upper.push_back(static_cast<char>(std::toupper(static_cast<unsigned char>(c))));
      }
      if (token.text == "fill" || token.text == "draw" || token.text == "path" ||
          token.text == "useasboundingbox") {
        return upper;
      }
      return "CMD(" + token.text + ")";
    }
    case TokenKind::kBeginEnv:
      return "BEGIN(" + token.text + ")";
    case TokenKind::kEndEnv:
      return "END(" + token.text + ")";
    case TokenKind::kOptions: {
      std::string s = "OPTS(";
      for (std::size_t i = 0; i < token.options.size(); ++i) {
        if (i) s += "; ";
        s += token.options[i].key;
        if (token.options[i].value) s += "=" + *token.options[i].value;
      }
      return s + ")";
    }
    case TokenKind::kCoordinate:
      return "COORD(" + format_shortest(token.x) + "," + format_shortest(token.y) + ")";
    case TokenKind::kLength: {
      std::string unit = token.unit == LengthUnit::kPt   ? "pt"
                         : token.unit == LengthUnit::kCm ? "cm"
                                                         : "";
      return "LEN(" + format_shortest(token.length) + unit + ")";
    }
    case TokenKind::kParenExpr:
      return "EXPR(" + token.text + ")";
    case TokenKind::kDashDash:
      return "DASHDASH";
    case TokenKind::kCircle:
      return "CIRCLE";
    case TokenKind::kRectangle:
      return "RECTANGLE";
    case TokenKind::kCycle:
      return "CYCLE";
    case TokenKind::kWord:
      return "WORD(" + token.text + ")";
    case TokenKind::kSymbol:
      return "SYM(" + token.text + ")";
    case TokenKind::kSemicolon:
      return "SEMI";
  }
  return "?";
}

std::string to_string(const std::vector<Token>& tokens) {
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (i) os << ", ";
    os << to_string(tokens[i]);
  }
  os << ']';
  return os.str();
}

}  // namespace sketchguide::tikz

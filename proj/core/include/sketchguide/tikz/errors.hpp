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

#include <string>

#include "sketchguide/error.hpp"

namespace sketchguide::tikz {

enum class ErrorCode {
  kUnterminatedOptionList,
  kInvalidNumber,
  kMissingEnvironment,
  kMalformedCommand,
  kUnsupportedConstruct,
};

const char* to_string(ErrorCode code);

/// Every lexer/parser failure. The message names the construct; line and
/// column are 1-based and point inside the offending statement.
class ParseError : public Error {
 public:
  ParseError(ErrorCode code, const std::string& message, int line, int column)
      : Error(to_string(code), message, line, column), kind_(code) {}

  ErrorCode kind() const noexcept { return kind_; }

 private:
  ErrorCode kind_;
};

}  // namespace sketchguide::tikz

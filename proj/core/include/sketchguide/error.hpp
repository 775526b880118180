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

#include <stdexcept>
#include <string>
#include <vector>

namespace sketchguide {

/// A non-fatal finding attached to a result (unknown option, clipped
/// coordinate, skipped polygon, ...). Line and column are 1-based; 0 means
/// "no source location".
struct Diagnostic {
  std::string code;
  std::string message;
  int line = 0;
  int column = 0;
};

/// Base of every structured error raised by the library. `code()` is a
/// stable identifier such as "MalformedCommand" or "SchemaError"; the CLI
/// serializes it as {code, message, line, column}.
class Error : public std::runtime_error {
 public:
  Error(std::string code, const std::string& message, int line = 0,
        int column = 0)
      : std::runtime_error(message),
        code_(std::move(code)),
        line_(line),
        column_(column) {}

  const std::string& code() const noexcept { return code_; }
  int line() const noexcept { return line_; }
  int column() const noexcept { return column_; }

 private:
  std::string code_;
  int line_;
  int column_;
};

class IoError : public Error {
 public:
  explicit IoError(const std::string& message) : Error("IoError", message) {}
};

}  // namespace sketchguide

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
#include <exception>
#include <iostream>

#include <nlohmann/json.hpp>

#include "commands.hpp"
#include "sketchguide/error.hpp"

namespace {

void report(const sketchguide::cli::GlobalFlags& flags, const std::string& code,
            const std::string& message, int line, int column) {
  if (flags.json_errors) {
    nlohmann::ordered_json j;
    j["code"] = code;
    j["message"] = message;
    j["line"] = line;
    j["column"] = column;
    std::cerr << j.dump() << '\n';
  } else if (line > 0) {
    std::cerr << "error: " << code << " at " << line << ":" << column << ": " << message << '\n';
  } else {
    std::cerr << "error: " << code << ": " << message << '\n';
  }
}

}  // namespace

int main(int argc, char** argv) {
  using namespace sketchguide::cli;
  CLI::App app{"Programmatic sketch guidance toolchain: TikZ sketches, grounding tokens, metrics"};
  app.require_subcommand(1);
  app.fallthrough();
  auto flags = std::make_shared<GlobalFlags>();
  app.add_flag("--json", flags->json, "Machine-readable JSON on stdout");
  app.add_flag("--json-errors", flags->json_errors, "Print errors as JSON {code, message, line, column}");

  add_parse(app, *flags);
  add_rasterize(app, *flags);
  add_prompt(app, *flags);
  add_query(app, *flags);
  add_build_dataset(app, *flags);
  add_ground(app, *flags);
  add_evaluate(app, *flags);
  add_pipeline(app, *flags);
  add_tally(app, *flags);

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  } catch (const sketchguide::Error& e) {
    report(*flags, e.code(), e.what(), e.line(), e.column());
    return 1;
  } catch (const std::exception& e) {
    report(*flags, "InternalError", e.what(), 0, 0);
    return 1;
  }
  return 0;
}

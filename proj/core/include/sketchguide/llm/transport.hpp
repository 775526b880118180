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

#include <atomic>
#include <chrono>
#include <cstddef>
#include <filesystem>
#include <map>
#include <mutex>
#include <string>
#include <string_view>

#include "sketchguide/error.hpp"

namespace sketchguide::llm {

class TransportError : public Error {
 public:
  using Error::Error;
};

/// Lowercase hex SHA-256 of the prompt bytes; the fixture key.
std::string prompt_sha256(std::string_view prompt);

class Transport {
 public:
  virtual ~Transport() = default;
  /// Returns the model's raw text for one prompt. Throws TransportError.
  virtual std::string complete(const std::string& prompt) = 0;
};

/// Replays {prompt_sha256, raw_response} JSON files from a directory. The
/// store is loaded once and read-only afterwards.
class FixtureTransport : public Transport {
 public:
  explicit FixtureTransport(const std::filesystem::path& dir);
  std::string complete(const std::string& prompt) override;
  std::size_t size() const { return responses_.size(); }
  bool contains(std::string_view sha) const { return responses_.count(std::string(sha)) != 0; }

 private:
  std::map<std::string, std::string> responses_;
};

struct HttpConfig {
  std::string base_url;  // e.g. https://api.openai.com/v1
  std::string api_key;
  std::string model;
  int max_retries = 3;
  std::chrono::milliseconds initial_backoff{500};
  std::chrono::seconds timeout{120};

  /// SKETCHGUIDE_LLM_BASE_URL, SKETCHGUIDE_LLM_API_KEY, SKETCHGUIDE_LLM_MODEL.
  /// Throws TransportError("MissingConfig") when base URL or model is unset.
  static HttpConfig from_env();
};

/// OpenAI-style chat-completions client. Retries 5xx, 429 and connection
/// failures with exponential backoff; any other non-2xx fails at once.
class HttpTransport : public Transport {
 public:
  explicit HttpTransport(HttpConfig config);
  std::string complete(const std::string& prompt) override;

 private:
  HttpConfig config_;
};

/// Process-wide count of HTTP requests attempted; replay runs must leave it
/// at zero.
std::size_t network_request_count();

/// Forwards to another transport and writes each answer as a fixture file.
class RecordingTransport : public Transport {
 public:
  RecordingTransport(Transport& inner, std::filesystem::path dir);
  std::string complete(const std::string& prompt) override;

 private:
  Transport& inner_;
  std::filesystem::path dir_;
  std::mutex mu_;
};

/// Writes <dir>/<sha256>.json and returns its path.
std::filesystem::path write_fixture(const std::filesystem::path& dir, const std::string& prompt,
                                    const std::string& raw_response);

}  // namespace sketchguide::llm

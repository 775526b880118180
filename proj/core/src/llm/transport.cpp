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
#include "sketchguide/llm/transport.hpp"

#include <openssl/evp.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iterator>
#include <thread>

#include <httplib.h>
#include <nlohmann/json.hpp>

namespace sketchguide::llm {

namespace {

std::atomic<std::size_t> g_requests{0};

std::string env_or_empty(const char* name) {
  const char* v = std::getenv(name);
  return v ? std::string(v) : std::string();
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw IoError("cannot open '" + path.string() + "'");
  return {std::istreambuf_iterator<char>(is), std::istreambuf_iterator<char>()};
}

// Splits "https://host:port/prefix" into origin and path prefix.
std::pair<std::string, std::string> split_url(const std::string& url) {
  const std::size_t scheme = url.find("://");
  if (scheme == std::string::npos) {
    throw TransportError("MissingConfig", "base URL needs a scheme: '" + url + "'");
  }
  const std::size_t slash = url.find('/', scheme + 3);
  if (slash == std::string::npos) return {url, ""};
  std::string prefix = url.substr(slash);
  while (!prefix.empty() && prefix.back() == '/') prefix.pop_back();
  return {url.substr(0, slash), prefix};
}

}  // namespace

std::string prompt_sha256(std::string_view prompt) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(prompt.data(), prompt.size(), digest, &len, EVP_sha256(), nullptr) != 1) {
    throw Error("HashError", "SHA-256 digest failed");
  }
  static const char* hex = "0123456789abcdef";
  std::string out;
  out.reserve(len * 2);
  for (unsigned int i = 0; i < len; ++i) {
    out.push_back(hex[digest[i] >> 4]);
    out.push_back(hex[digest[i] & 0xf]);
  }
  return out;
}

FixtureTransport::FixtureTransport(const std::filesystem::path& dir) {
  std::error_code ec;
  if (!std::filesystem::is_directory(dir, ec)) {
    throw IoError("fixture directory '" + dir.string() + "' does not exist");
  }
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    if (!entry.is_regular_file() || entry.path().extension() != ".json") continue;
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(read_file(entry.path()));
    } catch (const nlohmann::json::exception& e) {
      throw TransportError("InvalidFixture", entry.path().string() + ": " + e.what());
    }
    if (!j.is_object() || !j.contains("prompt_sha256") || !j["prompt_sha256"].is_string() ||
        !j.contains("raw_response") || !j["raw_response"].is_string()) {
      throw TransportError("InvalidFixture",
                           entry.path().string() + ": expected {prompt_sha256, raw_response}");
    }
    responses_[j["prompt_sha256"].get<std::string>()] = j["raw_response"].get<std::string>();
  }
}

std::string FixtureTransport::complete(const std::string& prompt) {
  const std::string sha = prompt_sha256(prompt);
  auto it = responses_.find(sha);
  if (it == responses_.end()) {
    throw TransportError("FixtureMissing", "no recorded response for prompt " + sha);
  }
  return it->second;
}

HttpConfig HttpConfig::from_env() {
  HttpConfig c;
  c.base_url = env_or_empty("SKETCHGUIDE_LLM_BASE_URL");
  c.api_key = env_or_empty("SKETCHGUIDE_LLM_API_KEY");
  c.model = env_or_empty("SKETCHGUIDE_LLM_MODEL");
  if (c.base_url.empty() || c.model.empty()) {
    throw TransportError("MissingConfig",
                         "set SKETCHGUIDE_LLM_BASE_URL and SKETCHGUIDE_LLM_MODEL for live queries");
  }
  return c;
}

HttpTransport::HttpTransport(HttpConfig config) : config_(std::move(config)) {}

std::string HttpTransport::complete(const std::string& prompt) {
  const auto [origin, prefix] = split_url(config_.base_url);
  httplib::Client client(origin);
  client.set_connection_timeout(config_.timeout);
  client.set_read_timeout(config_.timeout);
  client.set_write_timeout(config_.timeout);
  httplib::Headers headers;
  if (!config_.api_key.empty()) headers.emplace("Authorization", "Bearer " + config_.api_key);

  const nlohmann::json body = {
      {"model", config_.model},
      {"n", 1},
      {"messages", nlohmann::json::array({{{"role", "user"}, {"content", prompt}}})}};
  const std::string payload = body.dump();

  auto backoff = config_.initial_backoff;
  std::string last_error;
  for (int attempt = 0; attempt <= config_.max_retries; ++attempt) {
    if (attempt > 0) {
      std::this_thread::sleep_for(backoff);
      backoff *= 2;
    }
    ++g_requests;
    auto res = client.Post(prefix + "/chat/completions", headers, payload, "application/json");
    if (!res) {
      last_error = "request failed: " + httplib::to_string(res.error());
      continue;
    }
    if (res->status >= 500 || res->status == 429) {
      last_error = "HTTP " + std::to_string(res->status);
      continue;
    }
    if (res->status < 200 || res->status >= 300) {
      throw TransportError("HttpStatus", "HTTP " + std::to_string(res->status) + ": " + res->body);
    }
    try {
      const auto j = nlohmann::json::parse(res->body);
      return j.at("choices").at(0).at("message").at("content").get<std::string>();
    } catch (const nlohmann::json::exception& e) {
      throw TransportError("InvalidResponse", std::string("unexpected completion body: ") + e.what());
    }
  }
  throw TransportError("RetriesExhausted", "giving up after " +
                                               std::to_string(config_.max_retries + 1) +
                                               " attempts: " + last_error);
}

std::size_t network_request_count() { return g_requests.load(); }

RecordingTransport::RecordingTransport(Transport& inner, std::filesystem::path dir)
    : inner_(inner), dir_(std::move(dir)) {}

std::string RecordingTransport::complete(const std::string& prompt) {
  std::string raw = inner_.complete(prompt);
  std::lock_guard<std::mutex> lock(mu_);
  write_fixture(dir_, prompt, raw);
  return raw;
}

std::filesystem::path write_fixture(const std::filesystem::path& dir, const std::string& prompt,
                                    const std::string& raw_response) {
  std::filesystem::create_directories(dir);
  const std::string sha = prompt_sha256(prompt);
  const auto path = dir / (sha + ".json");
  nlohmann::ordered_json j;
  j["prompt_sha256"] = sha;
  j["prompt"] = prompt;
  j["raw_response"] = raw_response;
  std::ofstream os(path, std::ios::binary | std::ios::trunc);
  if (!os) throw IoError("cannot write '" + path.string() + "'");
  os << j.dump(2) << '\n';
  return path;
}

}  // namespace sketchguide::llm

// Copyright 2026 The qaaug Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
// https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "qaaug/openai_provider.h"

#include <httplib.h>
#include <nlohmann/json.hpp>

#include <cstdlib>

namespace qaaug {

using json = nlohmann::json;

OpenAiProvider::OpenAiProvider(std::string base_url, std::string api_key,
                               std::string path)
    : base_url_(std::move(base_url)),
      api_key_(std::move(api_key)),
      path_(std::move(path)) {}

std::string OpenAiProvider::request_body(ChatRequest const& request) {
  json messages = json::array();
  if (!request.system.empty()) {
    messages.push_back({{"role", "system"}, {"content", request.system}});
  }
  messages.push_back({{"role", "user"}, {"content", request.user}});
  json body = {{"model", request.model},
               {"messages", std::move(messages)},
               {"temperature", request.temperature},
               {"max_tokens", request.max_tokens}};
  return body.dump();
}

ChatResponse OpenAiProvider::parse_response(std::string_view body) {
  json root;
  try {
    root = json::parse(body);
  } catch (json::parse_error const& e) {
    throw ProviderError(std::string("malformed completion response: ") +
                        e.what());
  }
  try {
    ChatResponse out;
    auto const& content = root.at("choices").at(0).at("message").at("content");
    out.text = content.is_null() ? std::string() : content.get<std::string>();
    auto const& usage = root.at("usage");
    out.prompt_tokens = usage.at("prompt_tokens").get<std::int64_t>();
    out.completion_tokens = usage.at("completion_tokens").get<std::int64_t>();
    return out;
  } catch (json::exception const& e) {
    throw ProviderError(std::string("unexpected completion response: ") +
                        e.what());
  }
}

namespace {

bool is_retryable_status(int status) {
  return status == 408 || status == 409 || status == 429 || status >= 500;
}

std::string snippet(std::string const& body) {
  constexpr std::size_t kMax = 300;
  return body.size() <= kMax ? body : body.substr(0, kMax) + "...";
}

}  // namespace

ChatResponse OpenAiProvider::send(ChatRequest const& request) {
  httplib::Client client(base_url_);
  auto const seconds =
      std::chrono::duration_cast<std::chrono::seconds>(request.timeout);
  auto const micros = std::chrono::duration_cast<std::chrono::microseconds>(
      request.timeout - seconds);
  client.set_connection_timeout(seconds.count(), micros.count());
  client.set_read_timeout(seconds.count(), micros.count());
  client.set_write_timeout(seconds.count(), micros.count());

  httplib::Headers headers = {{"Authorization", "Bearer " + api_key_}};
  auto result =
      client.Post(path_, headers, request_body(request), "application/json");
  if (!result) {
    auto const err = result.error();
    bool const timed_out = err == httplib::Error::ConnectionTimeout ||
                           err == httplib::Error::Read ||
                           err == httplib::Error::Write;
    throw TransientError("HTTP request failed: " + httplib::to_string(err),
                         timed_out);
  }
  if (result->status == 200) return parse_response(result->body);
  auto message = "HTTP " + std::to_string(result->status) + ": " +
                 snippet(result->body);
  if (is_retryable_status(result->status)) throw TransientError(message);
  throw ProviderError(message);
}

std::shared_ptr<OpenAiProvider> make_openai_provider(std::string base_url,
                                                     std::string_view env_var) {
  std::string const name(env_var);
  char const* key = std::getenv(name.c_str());
  if (key == nullptr || *key == '\0') {
    throw ProviderError("environment variable " + name + " is not set");
  }
  return std::make_shared<OpenAiProvider>(std::move(base_url), key);
}

}  // namespace qaaug

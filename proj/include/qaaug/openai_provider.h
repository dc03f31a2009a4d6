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

#ifndef QAAUG_OPENAI_PROVIDER_H_
#define QAAUG_OPENAI_PROVIDER_H_

#include <string>
#include <string_view>

#include "qaaug/llm_client.h"

namespace qaaug {

inline constexpr std::string_view kDefaultApiBase = "https://api.openai.com";
inline constexpr std::string_view kDefaultApiKeyEnv = "OPENAI_API_KEY";

/// OpenAI-style chat-completions endpoint.
///
/// Sends {model, messages, temperature, max_tokens} and reads
/// choices[0].message.content plus usage.prompt_tokens and
/// usage.completion_tokens. 408, 409, 429 and 5xx responses, connection
/// failures and timeouts are transient; every other non-200 status is a
/// ProviderError.
class OpenAiProvider : public ChatProvider {
 public:
  OpenAiProvider(std::string base_url, std::string api_key,
                 std::string path = "/v1/chat/completions");

  ChatResponse send(ChatRequest const& request) override;

  /// JSON request body for `request`; exposed for tests.
  static std::string request_body(ChatRequest const& request);
  /// Parses a 200 response body. Throws ProviderError if fields are missing.
  static ChatResponse parse_response(std::string_view body);

 private:
  std::string base_url_;
  std::string api_key_;
  std::string path_;
};

/// Reads the API key from `env_var`; throws ProviderError when unset.
std::shared_ptr<OpenAiProvider> make_openai_provider(
    std::string base_url, std::string_view env_var = kDefaultApiKeyEnv);

}  // namespace qaaug

#endif  // QAAUG_OPENAI_PROVIDER_H_

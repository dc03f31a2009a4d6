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

#ifndef QAAUG_SCRIPTED_MOCK_H_
#define QAAUG_SCRIPTED_MOCK_H_

#include <atomic>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qaaug/llm_client.h"

namespace qaaug {

struct MockOutcome {
  enum class Type { kText, kTransient, kFatal, kTimeout };

  Type type = Type::kText;
  /// Response for kText. Every "{key}" is replaced by the request key.
  std::string text;

  static MockOutcome reply(std::string text) {
    return {Type::kText, std::move(text)};
  }
  static MockOutcome transient() { return {Type::kTransient, {}}; }
  static MockOutcome fatal() { return {Type::kFatal, {}}; }
  static MockOutcome timeout() { return {Type::kTimeout, {}}; }
};

/// A request matches when every present condition holds. `outcomes` is
/// indexed by attempt number; the last entry repeats.
struct MockRule {
  std::optional<PromptKind> kind;
  /// Substring of the rendered system or user text.
  std::optional<std::string> contains;
  std::optional<std::string> key_prefix;
  std::vector<MockOutcome> outcomes;
};

/// Deterministic provider for tests and offline runs. Each request is
/// answered by the first matching rule, keyed only on request content and
/// attempt number, so concurrent identical requests get identical replies
/// regardless of arrival order. Token usage is estimate_tokens() of the
/// prompt (system + user) and of the reply.
class ScriptedMock : public ChatProvider {
 public:
  /// Throws std::invalid_argument if the script or any rule's outcome list
  /// is empty.
  explicit ScriptedMock(std::vector<MockRule> script);

  /// Script file format, either a bare array of rules or {"rules": [...]}:
  ///   {"kind": "qa_gen", "contains": "...", "key_prefix": "...",
  ///    "responses": ["text", {"text": "..."}, {"fail": "transient"}]}
  /// "fail" is one of "transient", "fatal" or "timeout".
  static std::vector<MockRule> parse_script(std::string_view json_text);

  ChatResponse send(ChatRequest const& request) override;

  std::size_t requests_served() const { return served_.load(); }

 private:
  std::vector<MockRule> script_;
  std::atomic<std::size_t> served_{0};
};

std::shared_ptr<ScriptedMock> scripted_mock(std::vector<MockRule> script);

}  // namespace qaaug

#endif  // QAAUG_SCRIPTED_MOCK_H_

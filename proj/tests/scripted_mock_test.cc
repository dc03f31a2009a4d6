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

#include "qaaug/scripted_mock.h"

#include <gtest/gtest.h>

#include <future>

namespace qaaug {
namespace {

ChatRequest request(PromptKind kind, std::string user = "u",
                    std::string key = "k", int attempt = 1) {
  ChatRequest r;
  r.kind = kind;
  r.system = "s";
  r.user = std::move(user);
  r.request_key = std::move(key);
  r.attempt = attempt;
  return r;
}

TEST(ScriptedMock, MatchesByKind) {
  ScriptedMock mock({{PromptKind::kQaGen, std::nullopt, std::nullopt,
                      {MockOutcome::reply("Question: Q\nAnswer: A")}},
                     {PromptKind::kReAnswer, std::nullopt, std::nullopt,
                      {MockOutcome::reply("A1")}}});
  EXPECT_EQ(mock.send(request(PromptKind::kReAnswer)).text, "A1");
  EXPECT_EQ(mock.send(request(PromptKind::kQaGen)).text,
            "Question: Q\nAnswer: A");
  EXPECT_EQ(mock.requests_served(), 2u);
}

TEST(ScriptedMock, UnmatchedRequestFails) {
  ScriptedMock mock({{PromptKind::kReAnswer, std::nullopt, std::nullopt,
                      {MockOutcome::reply("A1")}}});
  EXPECT_THROW(mock.send(request(PromptKind::kContextGen)), UnmatchedRequest);
}

TEST(ScriptedMock, FirstMatchingRuleWins) {
  ScriptedMock mock({{std::nullopt, "special", std::nullopt,
                      {MockOutcome::reply("first")}},
                     {std::nullopt, std::nullopt, "qa-1-",
                      {MockOutcome::reply("second")}},
                     {std::nullopt, std::nullopt, std::nullopt,
                      {MockOutcome::reply("fallback")}}});
  EXPECT_EQ(mock.send(request(PromptKind::kQaGen, "a special ask", "qa-1-0"))
                .text,
            "first");
  EXPECT_EQ(mock.send(request(PromptKind::kQaGen, "plain", "qa-1-0")).text,
            "second");
  EXPECT_EQ(mock.send(request(PromptKind::kQaGen, "plain", "qa-2-0")).text,
            "fallback");
}

TEST(ScriptedMock, OutcomesFollowAttemptsAndLastRepeats) {
  ScriptedMock mock({{std::nullopt, std::nullopt, std::nullopt,
                      {MockOutcome::transient(), MockOutcome::reply("ok")}}});
  EXPECT_THROW(mock.send(request(PromptKind::kQaGen, "u", "k", 1)),
               TransientError);
  EXPECT_EQ(mock.send(request(PromptKind::kQaGen, "u", "k", 2)).text, "ok");
  EXPECT_EQ(mock.send(request(PromptKind::kQaGen, "u", "k", 7)).text, "ok");
}

TEST(ScriptedMock, FailureKinds) {
  ScriptedMock mock({{std::nullopt, std::nullopt, std::nullopt,
                      {MockOutcome::timeout(), MockOutcome::fatal()}}});
  try {
    mock.send(request(PromptKind::kQaGen, "u", "k", 1));
    FAIL();
  } catch (TransientError const& e) {
    EXPECT_TRUE(e.timed_out());
  }
  EXPECT_THROW(mock.send(request(PromptKind::kQaGen, "u", "k", 2)),
               ProviderError);
}

TEST(ScriptedMock, KeySubstitution) {
  ScriptedMock mock({{std::nullopt, std::nullopt, std::nullopt,
                      {MockOutcome::reply("id={key}; again {key}")}}});
  EXPECT_EQ(mock.send(request(PromptKind::kQaGen, "u", "ctx-3-r0")).text,
            "id=ctx-3-r0; again ctx-3-r0");
}

TEST(ScriptedMock, ConcurrentIdenticalRequestsAgree) {
  ScriptedMock mock({{std::nullopt, std::nullopt, std::nullopt,
                      {MockOutcome::reply("same {key}")}}});
  auto const r = request(PromptKind::kContextGen, "u", "ctx-0-r0");
  std::vector<std::future<ChatResponse>> futures;
  for (int i = 0; i < 16; ++i) {
    futures.push_back(std::async(std::launch::async, [&] { return mock.send(r); }));
  }
  auto const first = futures[0].get();
  for (std::size_t i = 1; i < futures.size(); ++i) {
    auto const other = futures[i].get();
    EXPECT_EQ(other.text, first.text);
    EXPECT_EQ(other.prompt_tokens, first.prompt_tokens);
    EXPECT_EQ(other.completion_tokens, first.completion_tokens);
  }
}

TEST(ScriptedMock, ParseScriptFormats) {
  auto const rules = ScriptedMock::parse_script(R"([
    {"kind": "reanswer", "contains": "fee", "key_prefix": "syn-",
     "responses": ["A", {"text": "B"}, {"fail": "transient"},
                   {"fail": "fatal"}, {"fail": "timeout"}]},
    {"response": "only"}
  ])");
  ASSERT_EQ(rules.size(), 2u);
  EXPECT_EQ(rules[0].kind, PromptKind::kReAnswer);
  EXPECT_EQ(rules[0].contains, "fee");
  EXPECT_EQ(rules[0].key_prefix, "syn-");
  ASSERT_EQ(rules[0].outcomes.size(), 5u);
  EXPECT_EQ(rules[0].outcomes[1].text, "B");
  EXPECT_EQ(rules[0].outcomes[2].type, MockOutcome::Type::kTransient);
  EXPECT_EQ(rules[0].outcomes[3].type, MockOutcome::Type::kFatal);
  EXPECT_EQ(rules[0].outcomes[4].type, MockOutcome::Type::kTimeout);
  EXPECT_FALSE(rules[1].kind.has_value());
  EXPECT_EQ(rules[1].outcomes[0].text, "only");

  auto const wrapped =
      ScriptedMock::parse_script(R"({"rules": [{"responses": ["x"]}]})");
  EXPECT_EQ(wrapped.size(), 1u);
}

TEST(ScriptedMock, InvalidScriptsRejected) {
  EXPECT_THROW(ScriptedMock({}), std::invalid_argument);
  EXPECT_THROW(ScriptedMock({{std::nullopt, std::nullopt, std::nullopt, {}}}),
               std::invalid_argument);
  EXPECT_THROW(ScriptedMock::parse_script("{"), std::invalid_argument);
  EXPECT_THROW(ScriptedMock::parse_script(R"([{"kind": "x", "responses": []}])"),
               std::invalid_argument);
  EXPECT_THROW(ScriptedMock::parse_script(R"([{"responses": [{"fail": "boom"}]}])"),
               std::invalid_argument);
  EXPECT_THROW(ScriptedMock::parse_script(R"([{"contains": "x"}])"),
               std::invalid_argument);
  EXPECT_THROW(ScriptedMock::parse_script(R"({"other": []})"),
               std::invalid_argument);
}

}  // namespace
}  // namespace qaaug

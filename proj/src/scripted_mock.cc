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

#include <nlohmann/json.hpp>

#include <algorithm>

namespace qaaug {

using json = nlohmann::json;

ScriptedMock::ScriptedMock(std::vector<MockRule> script)
    : script_(std::move(script)) {
  if (script_.empty()) throw std::invalid_argument("mock script is empty");
  for (std::size_t i = 0; i < script_.size(); ++i) {
    if (script_[i].outcomes.empty()) {
      throw std::invalid_argument("mock rule " + std::to_string(i) +
                                  " has no responses");
    }
  }
}

namespace {

bool matches(MockRule const& rule, ChatRequest const& request) {
  if (rule.kind && *rule.kind != request.kind) return false;
  if (rule.contains && request.user.find(*rule.contains) == std::string::npos &&
      request.system.find(*rule.contains) == std::string::npos) {
    return false;
  }
  if (rule.key_prefix && !request.request_key.starts_with(*rule.key_prefix)) {
    return false;
  }
  return true;
}

std::string substitute_key(std::string text, std::string const& key) {
  static constexpr std::string_view kToken = "{key}";
  for (auto pos = text.find(kToken); pos != std::string::npos;
       pos = text.find(kToken, pos + key.size())) {
    text.replace(pos, kToken.size(), key);
  }
  return text;
}

MockOutcome parse_outcome(json const& j, std::string const& where) {
  if (j.is_string()) return MockOutcome::reply(j.get<std::string>());
  if (!j.is_object()) {
    throw std::invalid_argument(where + ": expected string or object");
  }
  if (auto it = j.find("text"); it != j.end()) {
    return MockOutcome::reply(it->get<std::string>());
  }
  if (auto it = j.find("fail"); it != j.end()) {
    auto const type = it->get<std::string>();
    if (type == "transient") return MockOutcome::transient();
    if (type == "fatal") return MockOutcome::fatal();
    if (type == "timeout") return MockOutcome::timeout();
    throw std::invalid_argument(where + ": unknown failure type '" + type +
                                "'");
  }
  throw std::invalid_argument(where + ": expected \"text\" or \"fail\"");
}

}  // namespace

std::vector<MockRule> ScriptedMock::parse_script(std::string_view json_text) {
  json root;
  try {
    root = json::parse(json_text);
  } catch (json::parse_error const& e) {
    throw std::invalid_argument(std::string("malformed mock script: ") +
                                e.what());
  }
  json const* rules = &root;
  if (root.is_object()) {
    auto it = root.find("rules");
    if (it == root.end()) {
      throw std::invalid_argument("mock script object needs a \"rules\" array");
    }
    rules = &*it;
  }
  if (!rules->is_array()) {
    throw std::invalid_argument("mock script rules must be an array");
  }
  std::vector<MockRule> script;
  try {
    for (std::size_t i = 0; i < rules->size(); ++i) {
      auto const& jr = (*rules)[i];
      auto const where = "rule " + std::to_string(i);
      if (!jr.is_object()) throw std::invalid_argument(where + ": not an object");
      MockRule rule;
      if (auto it = jr.find("kind"); it != jr.end() && !it->is_null()) {
        rule.kind = prompt_kind_from_string(it->get<std::string>());
      }
      if (auto it = jr.find("contains"); it != jr.end() && !it->is_null()) {
        rule.contains = it->get<std::string>();
      }
      if (auto it = jr.find("key_prefix"); it != jr.end() && !it->is_null()) {
        rule.key_prefix = it->get<std::string>();
      }
      auto it = jr.find("responses");
      if (it == jr.end()) it = jr.find("response");
      if (it == jr.end()) {
        throw std::invalid_argument(where + ": missing \"responses\"");
      }
      if (it->is_array()) {
        for (auto const& o : *it) rule.outcomes.push_back(parse_outcome(o, where));
      } else {
        rule.outcomes.push_back(parse_outcome(*it, where));
      }
      script.push_back(std::move(rule));
    }
  } catch (json::exception const& e) {
    throw std::invalid_argument(std::string("malformed mock script: ") +
                                e.what());
  }
  return script;
}

ChatResponse ScriptedMock::send(ChatRequest const& request) {
  ++served_;
  auto rule = std::find_if(script_.begin(), script_.end(), [&](auto const& r) {
    return matches(r, request);
  });
  if (rule == script_.end()) {
    throw UnmatchedRequest("no mock rule matches " +
                           std::string(to_string(request.kind)) +
                           " request '" + request.request_key + "'");
  }
  auto const index = std::min<std::size_t>(
      static_cast<std::size_t>(std::max(request.attempt, 1) - 1),
      rule->outcomes.size() - 1);
  auto const& outcome = rule->outcomes[index];
  switch (outcome.type) {
    case MockOutcome::Type::kTransient:
      throw TransientError("scripted transient failure");
    case MockOutcome::Type::kTimeout:
      throw TransientError("scripted timeout", /*timed_out=*/true);
    case MockOutcome::Type::kFatal:
      throw ProviderError("scripted fatal failure");
    case MockOutcome::Type::kText:
      break;
  }
  ChatResponse response;
  response.text = substitute_key(outcome.text, request.request_key);
  response.prompt_tokens = estimate_tokens(request.system + request.user);
  response.completion_tokens = estimate_tokens(response.text);
  return response;
}

std::shared_ptr<ScriptedMock> scripted_mock(std::vector<MockRule> script) {
  return std::make_shared<ScriptedMock>(std::move(script));
}

}  // namespace qaaug

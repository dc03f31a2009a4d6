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

#include "qaaug/quality.h"

#include <nlohmann/json.hpp>

#include <unordered_set>

#include "parallel.h"
#include "qaaug/metrics.h"
#include "qaaug/unicode.h"

namespace qaaug {

namespace {

std::u32string_view trim_if(std::u32string_view s, bool (*drop)(char32_t)) {
  while (!s.empty() && drop(s.front())) s.remove_prefix(1);
  while (!s.empty() && drop(s.back())) s.remove_suffix(1);
  return s;
}

std::u32string_view trim_back_if(std::u32string_view s, bool (*drop)(char32_t)) {
  while (!s.empty() && drop(s.back())) s.remove_suffix(1);
  return s;
}

bool is_space_or_punct(char32_t c) {
  return unicode::is_whitespace(c) || unicode::is_unicode_punctuation(c);
}

std::optional<std::size_t> find_exact(std::u32string_view haystack,
                                      std::u32string_view needle) {
  auto const pos = haystack.find(needle);
  if (pos == std::u32string_view::npos) return std::nullopt;
  return pos;
}

}  // namespace

AnswerSpan align_span(std::string_view context, std::string_view answer_text) {
  auto const ctx = unicode::decode(context);
  auto const raw = unicode::decode(answer_text);
  auto const answer = trim_if(raw, unicode::is_whitespace);
  auto const trimmed = trim_back_if(answer, is_space_or_punct);
  if (answer.empty() || ctx.empty()) {
    throw Unalignable("empty answer or context");
  }
  auto const ctx_lower = unicode::to_lower(ctx);

  auto make_span = [&](std::size_t pos, std::size_t len) {
    return AnswerSpan{unicode::encode(std::u32string_view(ctx).substr(pos, len)),
                      static_cast<std::int64_t>(pos)};
  };
  auto try_candidate = [&](std::u32string_view cand) -> std::optional<AnswerSpan> {
    if (cand.empty()) return std::nullopt;
    if (auto pos = find_exact(ctx, cand)) return make_span(*pos, cand.size());
    if (auto pos = find_exact(ctx_lower, unicode::to_lower(cand))) {
      return make_span(*pos, cand.size());
    }
    return std::nullopt;
  };

  if (auto span = try_candidate(answer)) return *span;
  if (trimmed != answer) {
    if (auto span = try_candidate(trimmed)) return *span;
  }
  throw Unalignable("answer '" + std::string(answer_text) +
                    "' does not occur in the context");
}

std::string_view to_string(MatchRule rule) {
  switch (rule) {
    case MatchRule::kNormalizedExact:
      return "normalized_exact";
    case MatchRule::kTokenF1Threshold:
      return "token_f1_threshold";
  }
  return "unknown";
}

MatchRule match_rule_from_string(std::string_view name) {
  if (name == "exact" || name == "normalized_exact") {
    return MatchRule::kNormalizedExact;
  }
  if (name == "f1" || name == "token_f1" || name == "token_f1_threshold") {
    return MatchRule::kTokenF1Threshold;
  }
  throw std::invalid_argument("unknown match rule '" + std::string(name) + "'");
}

FilterDecision compare_answers(std::string_view original,
                               std::string_view reanswer,
                               FilterOptions const& options) {
  FilterDecision d;
  d.original_answer = std::string(original);
  d.reanswer = std::string(reanswer);
  d.match_rule = options.rule;
  switch (options.rule) {
    case MatchRule::kNormalizedExact:
      d.matched = exact_match(reanswer, original) == 1;
      break;
    case MatchRule::kTokenF1Threshold:
      d.f1_value = token_f1(reanswer, original);
      d.matched = *d.f1_value >= options.f1_threshold;
      break;
  }
  return d;
}

std::string extract_answer(std::string_view completion) {
  static constexpr std::string_view kMarker = "Answer:";
  if (auto pos = completion.find(kMarker); pos != std::string_view::npos) {
    completion.remove_prefix(pos + kMarker.size());
  }
  // Cut at the first blank line (a line holding only whitespace).
  std::size_t line_start = 0;
  std::size_t end = completion.size();
  bool seen_text = false;
  while (line_start <= completion.size()) {
    auto nl = completion.find('\n', line_start);
    auto const line_end = nl == std::string_view::npos ? completion.size() : nl;
    auto const line = completion.substr(line_start, line_end - line_start);
    bool const blank =
        line.find_first_not_of(" \t\r\f\v") == std::string_view::npos;
    if (blank && seen_text) {
      end = line_start;
      break;
    }
    if (!blank) seen_text = true;
    if (nl == std::string_view::npos) break;
    line_start = nl + 1;
  }
  auto answer = completion.substr(0, end);
  auto const first = answer.find_first_not_of(" \t\r\n\f\v");
  if (first == std::string_view::npos) return {};
  auto const last = answer.find_last_not_of(" \t\r\n\f\v");
  return std::string(answer.substr(first, last - first + 1));
}

FilterResult roundtrip_filter(std::span<ContextQa const> pairs,
                              LlmClient& client,
                              PromptTemplate const& reanswer_template,
                              FilterOptions const& options) {
  std::vector<FilterDecision> decisions(pairs.size());
  std::vector<std::optional<LlmExchange>> exchanges(pairs.size());

  internal::parallel_for(
      pairs.size(), client.config().max_concurrent_requests,
      [&](std::size_t i) {
        auto const& pair = pairs[i];
        if (pair.qa.answers.empty()) {
          throw std::invalid_argument("pair '" + pair.qa.id +
                                      "' has no answer to check");
        }
        auto const& original = pair.qa.answers.front().text;
        auto const prompt = build_reanswer_prompt(pair.context, pair.qa.question,
                                                  reanswer_template);
        FilterDecision decision;
        try {
          auto exchange = client.complete(prompt, pair.qa.id);
          decision = compare_answers(original,
                                     extract_answer(exchange.response_text),
                                     options);
          exchanges[i] = std::move(exchange);
        } catch (UnmatchedRequest const&) {
          throw;
        } catch (LlmError const& e) {
          decision.original_answer = original;
          decision.match_rule = options.rule;
          decision.matched = false;
          decision.provider_error = e.what();
        }
        decision.qa_id = pair.qa.id;
        decisions[i] = std::move(decision);
      });

  FilterResult result;
  result.decisions = std::move(decisions);
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    if (result.decisions[i].matched) result.kept.push_back(pairs[i]);
    if (exchanges[i]) result.exchanges.push_back(std::move(*exchanges[i]));
  }
  return result;
}

std::vector<std::string> dedupe_exact(std::span<std::string const> contexts) {
  std::unordered_set<std::string> seen;
  std::vector<std::string> out;
  for (auto const& context : contexts) {
    std::u32string key;
    for (char32_t c : unicode::decode(context)) {
      if (unicode::is_whitespace(c)) {
        if (!key.empty() && key.back() != U' ') key.push_back(U' ');
      } else {
        key.push_back(c);
      }
    }
    if (!key.empty() && key.back() == U' ') key.pop_back();
    if (seen.insert(unicode::encode(key)).second) out.push_back(context);
  }
  return out;
}

namespace {
using ordered_json = nlohmann::ordered_json;
}

std::string decision_to_json_line(FilterDecision const& d) {
  ordered_json j;
  j["qa_id"] = d.qa_id;
  j["original_answer"] = d.original_answer;
  j["reanswer"] = d.reanswer;
  j["matched"] = d.matched;
  j["match_rule"] = to_string(d.match_rule);
  j["f1_value"] = d.f1_value ? ordered_json(*d.f1_value) : ordered_json();
  j["provider_error"] =
      d.provider_error ? ordered_json(*d.provider_error) : ordered_json();
  return j.dump();
}

FilterDecision decision_from_json_line(std::string_view line) {
  auto const j = nlohmann::json::parse(line);
  FilterDecision d;
  d.qa_id = j.at("qa_id").get<std::string>();
  d.original_answer = j.at("original_answer").get<std::string>();
  d.reanswer = j.at("reanswer").get<std::string>();
  d.matched = j.at("matched").get<bool>();
  d.match_rule = match_rule_from_string(j.at("match_rule").get<std::string>());
  if (auto it = j.find("f1_value"); it != j.end() && !it->is_null()) {
    d.f1_value = it->get<double>();
  }
  if (auto it = j.find("provider_error"); it != j.end() && !it->is_null()) {
    d.provider_error = it->get<std::string>();
  }
  return d;
}

}  // namespace qaaug

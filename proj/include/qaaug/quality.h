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

#ifndef QAAUG_QUALITY_H_
#define QAAUG_QUALITY_H_

#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "qaaug/dataset.h"
#include "qaaug/llm_client.h"
#include "qaaug/prompt.h"

namespace qaaug {

class Unalignable : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Anchors a generated answer to its first occurrence in `context`, trying
/// in order: exact substring; case-insensitive match (span text taken from
/// the context); and both again after trimming punctuation and whitespace
/// from the ends of the answer. Throws Unalignable if nothing matches.
AnswerSpan align_span(std::string_view context, std::string_view answer_text);

enum class MatchRule { kNormalizedExact, kTokenF1Threshold };

std::string_view to_string(MatchRule rule);
/// Accepts "exact" / "normalized_exact" and "f1" / "token_f1".
MatchRule match_rule_from_string(std::string_view name);

struct FilterOptions {
  MatchRule rule = MatchRule::kNormalizedExact;
  /// Used by kTokenF1Threshold only: match iff F1 >= threshold.
  double f1_threshold = 0.8;
};

struct FilterDecision {
  std::string qa_id;
  std::string original_answer;
  std::string reanswer;
  bool matched = false;
  MatchRule match_rule = MatchRule::kNormalizedExact;
  /// Present when match_rule is kTokenF1Threshold and a re-answer arrived.
  std::optional<double> f1_value;
  /// Set when the re-answer request failed; the pair is then discarded.
  std::optional<std::string> provider_error;
};

/// Applies the match rule to two answers and fills the comparison fields of
/// a decision (qa_id is left empty).
FilterDecision compare_answers(std::string_view original,
                               std::string_view reanswer,
                               FilterOptions const& options);

struct FilterResult {
  /// Input pairs that passed, in input order.
  std::vector<ContextQa> kept;
  /// One per input pair, in input order.
  std::vector<FilterDecision> decisions;
  std::vector<LlmExchange> exchanges;
};

/// Round-trip filtration: asks the model each question again (context and
/// question only) and keeps a pair iff the fresh answer matches the
/// original under `options.rule`. Re-answer requests run concurrently and
/// use each pair's id as the request key. A pair whose re-answer request
/// fails is discarded with provider_error set; UnmatchedRequest propagates.
FilterResult roundtrip_filter(std::span<ContextQa const> pairs,
                              LlmClient& client,
                              PromptTemplate const& reanswer_template,
                              FilterOptions const& options = {});

/// Reads an answer out of a completion: text after the first "Answer:"
/// marker if there is one, else the whole text, trimmed and cut at the first
/// blank line.
std::string extract_answer(std::string_view completion);

/// Removes contexts that duplicate an earlier one once whitespace runs are
/// collapsed and the ends trimmed; keeps first occurrences.
std::vector<std::string> dedupe_exact(std::span<std::string const> contexts);

/// JSON-lines audit record.
std::string decision_to_json_line(FilterDecision const& decision);
FilterDecision decision_from_json_line(std::string_view line);

}  // namespace qaaug

#endif  // QAAUG_QUALITY_H_

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

#ifndef QAAUG_GENERATION_H_
#define QAAUG_GENERATION_H_

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qaaug/cost.h"
#include "qaaug/dataset.h"
#include "qaaug/llm_client.h"
#include "qaaug/prompt.h"
#include "qaaug/quality.h"

/// Two-stage synthesis: new contexts from few-shot context exemplars, then
/// QA pairs conditioned on each synthetic context, then span alignment and
/// optional round-trip filtration.
namespace qaaug {

struct GenerationConfig {
  int shots = 1;
  /// Target synthetic size as a multiple of the training set, in QA pairs.
  double multiplier = 1.0;
  int qa_per_context = 1;
  std::uint64_t rng_seed = 0;
  /// Extra attempts for blank or nonconforming completions.
  int parse_retry_limit = 2;
  bool apply_roundtrip_filter = false;
  FilterOptions filter;
  /// Drop whitespace-normalized duplicate contexts before QA generation.
  bool dedupe_contexts = false;

  /// Throws std::invalid_argument when a bound is violated.
  void validate() const;
};

struct GenerationRunStats {
  std::int64_t contexts_requested = 0;
  std::int64_t contexts_generated = 0;
  /// Only non-zero with dedupe_contexts.
  std::int64_t contexts_discarded_duplicate = 0;
  std::int64_t qa_requested = 0;
  std::int64_t qa_parsed = 0;
  std::int64_t qa_aligned = 0;
  std::int64_t qa_kept_after_filter = 0;
  std::int64_t qa_discarded_parse = 0;
  std::int64_t qa_discarded_alignment = 0;
  std::int64_t qa_discarded_filter = 0;
  /// Fewer contexts than requested survived the retry budget.
  bool shortfall = false;
  CostReport cost;

  /// Every requested QA sits in exactly one terminal bucket and the funnel
  /// counts are consistent.
  bool balanced(bool filtering) const;

  bool operator==(GenerationRunStats const&) const = default;
};

/// ceil(multiplier * train_pairs / qa_per_context), robust to binary
/// rounding of the multiplier (1.1 * 10 asks for 11, not 12).
std::int64_t contexts_needed(std::size_t train_pairs, double multiplier,
                             int qa_per_context);

struct ContextBatch {
  std::vector<std::string> contexts;
  std::int64_t requested = 0;
  /// Set when fewer than `requested` contexts were produced.
  bool shortfall = false;
  std::vector<LlmExchange> exchanges;
};

/// Stage one. Each slot draws its own exemplars from a seed derived from
/// (rng_seed, slot, attempt); blank completions are retried up to
/// parse_retry_limit times, after which the slot is dropped and the batch
/// flagged as a shortfall. Returned contexts are trimmed.
ContextBatch generate_contexts(QaDataset const& train,
                               GenerationConfig const& config,
                               LlmClient& client,
                               PromptTemplates const& templates);

struct RawQa {
  std::string question;
  std::string answer;

  bool operator==(RawQa const&) const = default;
};

/// Parses "Question: ...\nAnswer: ...". The question is the trimmed text
/// between the markers; the answer is the trimmed text after the first
/// "Answer:" up to the first blank line. nullopt if either is missing or
/// empty.
std::optional<RawQa> parse_qa_completion(std::string_view completion);

struct QaBatch {
  /// One entry per requested pair; nullopt when every attempt was
  /// nonconforming.
  std::vector<std::optional<RawQa>> pairs;
  std::int64_t discarded_parse = 0;
  std::vector<LlmExchange> exchanges;
};

/// Stage two for one context: qa_per_context independent one-pair requests.
/// `context_index` keys the exemplar draws and request keys.
QaBatch generate_qa_for_context(std::string_view context,
                                std::size_t context_index,
                                QaDataset const& train,
                                GenerationConfig const& config,
                                LlmClient& client,
                                PromptTemplates const& templates);

struct AugmentationResult {
  QaDataset synthetic;
  GenerationRunStats stats;
  /// Empty unless filtering ran.
  std::vector<FilterDecision> decisions;
  /// Every successful exchange, ordered by stage then request.
  std::vector<LlmExchange> exchanges;
};

/// The full pipeline. Synthetic ids are "syn-" + generation id, where the
/// generation id is "s<seed>-c<context>-q<pair>". Output is a deterministic
/// function of (train, config, provider behavior) regardless of
/// max_concurrent_requests.
AugmentationResult run_augmentation(QaDataset const& train,
                                    GenerationConfig const& config,
                                    LlmClient& client,
                                    PromptTemplates const& templates,
                                    PriceTable const& prices);

std::string stats_to_json(GenerationRunStats const& stats);
GenerationRunStats stats_from_json(std::string_view json_text);

/// Exchange log record: one JSON object per line with kind, request key,
/// exemplar ids, token usage, attempts and latency.
std::string exchange_to_json_line(LlmExchange const& exchange);
LlmExchange exchange_from_json_line(std::string_view line);

}  // namespace qaaug

#endif  // QAAUG_GENERATION_H_

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

#include "qaaug/generation.h"

#include <nlohmann/json.hpp>

#include <cmath>

#include "parallel.h"
#include "qaaug/random.h"

namespace qaaug {

namespace {

// Stream tags for derive_seed.
constexpr std::uint64_t kContextStream = 1;
constexpr std::uint64_t kQaStream = 2;

std::string trim(std::string_view s) {
  auto const first = s.find_first_not_of(" \t\r\n\f\v");
  if (first == std::string_view::npos) return {};
  auto const last = s.find_last_not_of(" \t\r\n\f\v");
  return std::string(s.substr(first, last - first + 1));
}

std::string context_key(std::size_t slot, int attempt) {
  return "ctx-" + std::to_string(slot) + "-r" + std::to_string(attempt);
}

std::string qa_key(std::size_t context, int pair, int attempt) {
  return "qa-" + std::to_string(context) + "-" + std::to_string(pair) + "-r" +
         std::to_string(attempt);
}

std::string generation_id(std::uint64_t seed, std::size_t context, int pair) {
  return "s" + std::to_string(seed) + "-c" + std::to_string(context) + "-q" +
         std::to_string(pair);
}

}  // namespace

void GenerationConfig::validate() const {
  if (shots != 1 && shots != 2) {
    throw std::invalid_argument("shots must be 1 or 2");
  }
  if (!std::isfinite(multiplier) || multiplier < 1.0 || multiplier > 10.0) {
    throw std::invalid_argument("multiplier must be between 1 and 10");
  }
  if (qa_per_context < 1) {
    throw std::invalid_argument("qa_per_context must be >= 1");
  }
  if (parse_retry_limit < 0) {
    throw std::invalid_argument("parse_retry_limit must be >= 0");
  }
  if (!(filter.f1_threshold >= 0.0 && filter.f1_threshold <= 1.0)) {
    throw std::invalid_argument("F1 threshold must be in [0, 1]");
  }
}

bool GenerationRunStats::balanced(bool filtering) const {
  for (auto v : {contexts_requested, contexts_generated,
                 contexts_discarded_duplicate, qa_requested, qa_parsed,
                 qa_aligned, qa_kept_after_filter, qa_discarded_parse,
                 qa_discarded_alignment, qa_discarded_filter}) {
    if (v < 0) return false;
  }
  if (contexts_generated + contexts_discarded_duplicate > contexts_requested) {
    return false;
  }
  if (qa_requested != qa_parsed + qa_discarded_parse) return false;
  if (qa_parsed != qa_aligned + qa_discarded_alignment) return false;
  if (filtering) {
    if (qa_aligned != qa_kept_after_filter + qa_discarded_filter) return false;
  } else {
    if (qa_kept_after_filter != qa_aligned || qa_discarded_filter != 0) {
      return false;
    }
  }
  return qa_requested == qa_kept_after_filter + qa_discarded_parse +
                             qa_discarded_alignment + qa_discarded_filter;
}

std::int64_t contexts_needed(std::size_t train_pairs, double multiplier,
                             int qa_per_context) {
  if (qa_per_context < 1) {
    throw std::invalid_argument("qa_per_context must be >= 1");
  }
  double const target = multiplier * static_cast<double>(train_pairs);
  double const nearest = std::round(target);
  double const qa_target =
      std::fabs(target - nearest) <= 1e-9 * std::max(1.0, target)
          ? nearest
          : std::ceil(target);
  auto const pairs = static_cast<std::int64_t>(qa_target);
  return (pairs + qa_per_context - 1) / qa_per_context;
}

ContextBatch generate_contexts(QaDataset const& train,
                               GenerationConfig const& config,
                               LlmClient& client,
                               PromptTemplates const& templates) {
  config.validate();
  if (train.qa_pair_count() == 0) {
    throw InsufficientData("training set has no QA pairs");
  }
  ContextBatch batch;
  batch.requested = contexts_needed(train.qa_pair_count(), config.multiplier,
                                    config.qa_per_context);
  auto const n = static_cast<std::size_t>(batch.requested);
  std::vector<std::optional<std::string>> slots(n);
  std::vector<std::vector<LlmExchange>> slot_exchanges(n);

  internal::parallel_for(
      n, client.config().max_concurrent_requests, [&](std::size_t i) {
        for (int r = 0; r <= config.parse_retry_limit; ++r) {
          auto const exemplars = sample_exemplars(
              train, config.shots,
              derive_seed(config.rng_seed, {kContextStream, i,
                                            static_cast<std::uint64_t>(r)}));
          std::vector<std::string> contexts;
          std::vector<std::string> ids;
          for (auto const& ex : exemplars) {
            contexts.push_back(ex.context);
            ids.push_back(ex.qa.id);
          }
          auto const prompt = build_context_prompt(
              contexts, templates.context_gen, config.shots, std::move(ids));
          auto exchange = client.complete(prompt, context_key(i, r));
          auto text = trim(exchange.response_text);
          slot_exchanges[i].push_back(std::move(exchange));
          if (!text.empty()) {
            slots[i] = std::move(text);
            return;
          }
        }
      });

  for (std::size_t i = 0; i < n; ++i) {
    if (slots[i]) batch.contexts.push_back(std::move(*slots[i]));
    for (auto& ex : slot_exchanges[i]) batch.exchanges.push_back(std::move(ex));
  }
  batch.shortfall =
      static_cast<std::int64_t>(batch.contexts.size()) < batch.requested;
  return batch;
}

std::optional<RawQa> parse_qa_completion(std::string_view completion) {
  static constexpr std::string_view kQuestion = "Question:";
  static constexpr std::string_view kAnswer = "Answer:";
  auto const q = completion.find(kQuestion);
  if (q == std::string_view::npos) return std::nullopt;
  auto const a = completion.find(kAnswer, q + kQuestion.size());
  if (a == std::string_view::npos) return std::nullopt;
  RawQa out;
  out.question =
      trim(completion.substr(q + kQuestion.size(), a - q - kQuestion.size()));
  out.answer = extract_answer(completion.substr(a));
  if (out.question.empty() || out.answer.empty()) return std::nullopt;
  return out;
}

QaBatch generate_qa_for_context(std::string_view context,
                                std::size_t context_index,
                                QaDataset const& train,
                                GenerationConfig const& config,
                                LlmClient& client,
                                PromptTemplates const& templates) {
  if (context.empty()) throw std::invalid_argument("context must be non-empty");
  QaBatch batch;
  for (int j = 0; j < config.qa_per_context; ++j) {
    std::optional<RawQa> parsed;
    for (int r = 0; r <= config.parse_retry_limit && !parsed; ++r) {
      auto const exemplars = sample_exemplars(
          train, config.shots,
          derive_seed(config.rng_seed,
                      {kQaStream, context_index, static_cast<std::uint64_t>(j),
                       static_cast<std::uint64_t>(r)}));
      auto const prompt =
          build_qa_prompt(exemplars, context, templates.qa_gen, config.shots);
      auto exchange = client.complete(prompt, qa_key(context_index, j, r));
      parsed = parse_qa_completion(exchange.response_text);
      batch.exchanges.push_back(std::move(exchange));
    }
    if (!parsed) ++batch.discarded_parse;
    batch.pairs.push_back(std::move(parsed));
  }
  return batch;
}

AugmentationResult run_augmentation(QaDataset const& train,
                                    GenerationConfig const& config,
                                    LlmClient& client,
                                    PromptTemplates const& templates,
                                    PriceTable const& prices) {
  config.validate();
  AugmentationResult result;
  auto& stats = result.stats;

  auto contexts_batch = generate_contexts(train, config, client, templates);
  stats.contexts_requested = contexts_batch.requested;
  stats.shortfall = contexts_batch.shortfall;
  auto contexts = std::move(contexts_batch.contexts);
  if (config.dedupe_contexts) {
    auto deduped = dedupe_exact(contexts);
    stats.contexts_discarded_duplicate =
        static_cast<std::int64_t>(contexts.size() - deduped.size());
    contexts = std::move(deduped);
  }
  stats.contexts_generated = static_cast<std::int64_t>(contexts.size());
  stats.qa_requested = stats.contexts_generated * config.qa_per_context;
  result.exchanges = std::move(contexts_batch.exchanges);

  std::vector<QaBatch> qa_batches(contexts.size());
  internal::parallel_for(
      contexts.size(), client.config().max_concurrent_requests,
      [&](std::size_t c) {
        qa_batches[c] = generate_qa_for_context(contexts[c], c, train, config,
                                                client, templates);
      });

  std::vector<ContextQa> aligned;
  std::vector<std::size_t> aligned_context;
  for (std::size_t c = 0; c < contexts.size(); ++c) {
    auto& batch = qa_batches[c];
    stats.qa_discarded_parse += batch.discarded_parse;
    for (auto& ex : batch.exchanges) result.exchanges.push_back(std::move(ex));
    for (std::size_t j = 0; j < batch.pairs.size(); ++j) {
      auto const& raw = batch.pairs[j];
      if (!raw) continue;
      ++stats.qa_parsed;
      AnswerSpan span;
      try {
        span = align_span(contexts[c], raw->answer);
      } catch (Unalignable const&) {
        ++stats.qa_discarded_alignment;
        continue;
      }
      ++stats.qa_aligned;
      auto const gen_id =
          generation_id(config.rng_seed, c, static_cast<int>(j));
      QaPair qa;
      qa.id = std::string(kSyntheticIdPrefix) + gen_id;
      qa.question = raw->question;
      qa.answers = {std::move(span)};
      qa.provenance = Provenance::kSynthetic;
      qa.gen_meta = GenerationMeta{config.shots, gen_id,
                                   config.apply_roundtrip_filter};
      aligned.push_back({contexts[c], std::move(qa)});
      aligned_context.push_back(c);
    }
  }

  std::vector<std::size_t> kept_context;
  std::vector<ContextQa> kept;
  if (config.apply_roundtrip_filter) {
    auto filtered =
        roundtrip_filter(aligned, client, templates.reanswer, config.filter);
    for (std::size_t i = 0; i < aligned.size(); ++i) {
      if (filtered.decisions[i].matched) {
        kept.push_back(std::move(aligned[i]));
        kept_context.push_back(aligned_context[i]);
      }
    }
    result.decisions = std::move(filtered.decisions);
    for (auto& ex : filtered.exchanges) result.exchanges.push_back(std::move(ex));
    stats.qa_discarded_filter = static_cast<std::int64_t>(aligned.size() - kept.size());
  } else {
    kept = std::move(aligned);
    kept_context = std::move(aligned_context);
  }
  stats.qa_kept_after_filter = static_cast<std::int64_t>(kept.size());

  result.synthetic.name = train.name + "-synthetic";
  for (std::size_t i = 0; i < kept.size(); ++i) {
    if (i == 0 || kept_context[i] != kept_context[i - 1]) {
      result.synthetic.passages.push_back(
          Passage{std::nullopt, std::move(kept[i].context), {}});
    }
    result.synthetic.passages.back().qas.push_back(std::move(kept[i].qa));
  }
  validate_dataset(result.synthetic);

  stats.cost = accumulate_cost(result.exchanges, prices);
  return result;
}

namespace {
using json = nlohmann::json;
using ordered_json = nlohmann::ordered_json;
}  // namespace

std::string stats_to_json(GenerationRunStats const& s) {
  ordered_json j;
  j["contexts_requested"] = s.contexts_requested;
  j["contexts_generated"] = s.contexts_generated;
  j["contexts_discarded_duplicate"] = s.contexts_discarded_duplicate;
  j["qa_requested"] = s.qa_requested;
  j["qa_parsed"] = s.qa_parsed;
  j["qa_aligned"] = s.qa_aligned;
  j["qa_kept_after_filter"] = s.qa_kept_after_filter;
  j["qa_discarded_parse"] = s.qa_discarded_parse;
  j["qa_discarded_alignment"] = s.qa_discarded_alignment;
  j["qa_discarded_filter"] = s.qa_discarded_filter;
  j["shortfall"] = s.shortfall;
  j["cost"] = ordered_json::parse(cost_to_json(s.cost));
  return j.dump(2) + "\n";
}

GenerationRunStats stats_from_json(std::string_view json_text) {
  try {
    auto const j = json::parse(json_text);
    GenerationRunStats s;
    s.contexts_requested = j.at("contexts_requested").get<std::int64_t>();
    s.contexts_generated = j.at("contexts_generated").get<std::int64_t>();
    s.contexts_discarded_duplicate =
        j.value("contexts_discarded_duplicate", std::int64_t{0});
    s.qa_requested = j.at("qa_requested").get<std::int64_t>();
    s.qa_parsed = j.at("qa_parsed").get<std::int64_t>();
    s.qa_aligned = j.at("qa_aligned").get<std::int64_t>();
    s.qa_kept_after_filter = j.at("qa_kept_after_filter").get<std::int64_t>();
    s.qa_discarded_parse = j.at("qa_discarded_parse").get<std::int64_t>();
    s.qa_discarded_alignment = j.at("qa_discarded_alignment").get<std::int64_t>();
    s.qa_discarded_filter = j.at("qa_discarded_filter").get<std::int64_t>();
    s.shortfall = j.value("shortfall", false);
    s.cost = cost_from_json(j.at("cost").dump());
    return s;
  } catch (json::exception const& e) {
    throw std::invalid_argument(std::string("malformed stats: ") + e.what());
  }
}

std::string exchange_to_json_line(LlmExchange const& ex) {
  ordered_json j;
  j["kind"] = to_string(ex.prompt.kind);
  j["request_key"] = ex.request_key;
  j["shots"] = ex.prompt.shots;
  j["exemplar_ids"] = ex.prompt.exemplar_ids;
  j["prompt_tokens"] = ex.prompt_tokens;
  j["completion_tokens"] = ex.completion_tokens;
  j["attempt_count"] = ex.attempt_count;
  j["latency_ms"] = ex.latency.count();
  return j.dump();
}

LlmExchange exchange_from_json_line(std::string_view line) {
  try {
    auto const j = json::parse(line);
    LlmExchange ex;
    ex.prompt.kind = prompt_kind_from_string(j.at("kind").get<std::string>());
    ex.request_key = j.value("request_key", std::string());
    ex.prompt.shots = j.value("shots", 0);
    ex.prompt.exemplar_ids =
        j.value("exemplar_ids", std::vector<std::string>{});
    ex.prompt_tokens = j.at("prompt_tokens").get<std::int64_t>();
    ex.completion_tokens = j.at("completion_tokens").get<std::int64_t>();
    ex.attempt_count = j.value("attempt_count", 1);
    ex.latency = std::chrono::milliseconds(j.value("latency_ms", std::int64_t{0}));
    if (ex.prompt_tokens < 0 || ex.completion_tokens < 0) {
      throw std::invalid_argument("negative token count in exchange log");
    }
    return ex;
  } catch (json::exception const& e) {
    throw std::invalid_argument(std::string("malformed exchange record: ") +
                                e.what());
  }
}

}  // namespace qaaug

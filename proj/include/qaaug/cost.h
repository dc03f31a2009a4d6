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

#ifndef QAAUG_COST_H_
#define QAAUG_COST_H_

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>

#include "qaaug/llm_client.h"

namespace qaaug {

/// Exact fixed-point currency amount.
///
/// Rates are configured in micro-units per 1,000 tokens, so one token costs
/// rate/1000 micro-units. Amounts are therefore carried in nano-units
/// (1e-9 of the currency unit), where tokens * rate is always an integer.
class Money {
 public:
  constexpr Money() = default;
  static constexpr Money from_nanos(std::int64_t nanos) { return Money(nanos); }
  static constexpr Money from_micros(std::int64_t micros) {
    return Money(micros * 1000);
  }

  /// Parses a non-negative decimal such as "0.03" with at most `max_digits`
  /// fractional digits. Throws std::invalid_argument otherwise.
  static Money parse(std::string_view decimal, int max_digits = 9);

  constexpr std::int64_t nanos() const { return nanos_; }

  /// Shortest exact decimal with at least two fractional digits ("0.06").
  std::string to_string() const;

  friend constexpr Money operator+(Money a, Money b) {
    return Money(a.nanos_ + b.nanos_);
  }
  Money& operator+=(Money other) {
    nanos_ += other.nanos_;
    return *this;
  }
  friend constexpr auto operator<=>(Money, Money) = default;

 private:
  constexpr explicit Money(std::int64_t nanos) : nanos_(nanos) {}
  std::int64_t nanos_ = 0;
};

struct PriceTable {
  /// Micro-units of currency per 1,000 prompt tokens.
  std::int64_t prompt_rate_micros = 0;
  /// Micro-units of currency per 1,000 completion tokens.
  std::int64_t completion_rate_micros = 0;
  std::string currency_code = "USD";

  /// Cost of `prompt_tokens` and `completion_tokens` at these rates. Throws
  /// std::overflow_error if the product does not fit.
  Money price(std::int64_t prompt_tokens, std::int64_t completion_tokens) const;

  bool operator==(PriceTable const&) const = default;
};

/// Price file: {"prompt_rate": "0.03", "completion_rate": "0.06",
/// "currency": "USD"}, rates per 1,000 tokens as decimal strings or
/// numbers with at most six fractional digits.
PriceTable parse_price_table(std::string_view json_text);
std::string serialize_price_table(PriceTable const& prices);

struct StageCost {
  std::int64_t prompt_tokens = 0;
  std::int64_t completion_tokens = 0;
  std::int64_t requests = 0;
  Money cost;

  bool operator==(StageCost const&) const = default;
};

inline constexpr std::array<PromptKind, 3> kAllPromptKinds = {
    PromptKind::kContextGen, PromptKind::kQaGen, PromptKind::kReAnswer};

struct CostReport {
  std::string currency_code = "USD";
  std::int64_t total_prompt_tokens = 0;
  std::int64_t total_completion_tokens = 0;
  Money total_cost;
  /// Indexed by PromptKind; always has all three stages.
  std::array<StageCost, 3> per_stage{};

  StageCost const& stage(PromptKind kind) const {
    return per_stage[static_cast<std::size_t>(kind)];
  }
  StageCost& stage(PromptKind kind) {
    return per_stage[static_cast<std::size_t>(kind)];
  }

  bool operator==(CostReport const&) const = default;
};

CostReport accumulate_cost(std::span<LlmExchange const> exchanges,
                           PriceTable const& prices);

/// Prices a per-stage token tally, e.g. one read back from a manifest.
/// Stage costs are filled in from the token counts; totals are their sums.
CostReport price_usage(std::array<StageCost, 3> per_stage,
                       PriceTable const& prices);

/// {"currency", "total_prompt_tokens", "total_completion_tokens",
/// "total_cost", "total_cost_nanos", "per_stage": {kind: {...}}}
std::string cost_to_json(CostReport const& report);
CostReport cost_from_json(std::string_view json_text);

/// Aligned plain-text rendering with one row per stage.
std::string cost_to_text(CostReport const& report);

}  // namespace qaaug

#endif  // QAAUG_COST_H_

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

#include "qaaug/cost.h"

#include <nlohmann/json.hpp>

#include <cstdio>
#include <stdexcept>

namespace qaaug {

namespace {

constexpr std::int64_t kNanosPerUnit = 1'000'000'000;

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t out = 0;
  if (__builtin_mul_overflow(a, b, &out)) {
    throw std::overflow_error("currency amount overflow");
  }
  return out;
}

std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t out = 0;
  if (__builtin_add_overflow(a, b, &out)) {
    throw std::overflow_error("currency amount overflow");
  }
  return out;
}

}  // namespace

Money Money::parse(std::string_view decimal, int max_digits) {
  auto const bad = [&] {
    return std::invalid_argument("invalid amount '" + std::string(decimal) +
                                 "'");
  };
  if (decimal.empty()) throw bad();
  auto const dot = decimal.find('.');
  auto const whole = decimal.substr(0, dot);
  auto const frac =
      dot == std::string_view::npos ? std::string_view{} : decimal.substr(dot + 1);
  if (whole.empty() && frac.empty()) throw bad();
  std::int64_t nanos = 0;
  for (char c : whole) {
    if (c < '0' || c > '9') throw bad();
    nanos = checked_add(checked_mul(nanos, 10), c - '0');
  }
  nanos = checked_mul(nanos, kNanosPerUnit);
  std::int64_t scale = kNanosPerUnit / 10;
  int digits = 0;
  for (char c : frac) {
    if (c < '0' || c > '9') throw bad();
    if (++digits > max_digits) {
      // Trailing zeros beyond the limit are harmless.
      if (c != '0') throw bad();
      continue;
    }
    nanos = checked_add(nanos, (c - '0') * scale);
    scale /= 10;
  }
  return Money(nanos);
}

std::string Money::to_string() const {
  auto const negative = nanos_ < 0;
  auto const magnitude = negative ? 0 - static_cast<std::uint64_t>(nanos_)
                                  : static_cast<std::uint64_t>(nanos_);
  auto const whole = magnitude / kNanosPerUnit;
  auto const frac = magnitude % kNanosPerUnit;
  std::string digits = std::to_string(frac);
  digits.insert(0, 9 - digits.size(), '0');
  while (digits.size() > 2 && digits.back() == '0') digits.pop_back();
  return (negative ? "-" : "") + std::to_string(whole) + "." + digits;
}

Money PriceTable::price(std::int64_t prompt_tokens,
                        std::int64_t completion_tokens) const {
  // tokens/1000 * rate_micros micro-units == tokens * rate_micros nano-units.
  return Money::from_nanos(
      checked_add(checked_mul(prompt_tokens, prompt_rate_micros),
                  checked_mul(completion_tokens, completion_rate_micros)));
}

namespace {

using json = nlohmann::json;

std::int64_t parse_rate(json const& j, char const* field) {
  std::string text;
  if (j.is_string()) {
    text = j.get<std::string>();
  } else if (j.is_number()) {
    text = j.dump();
  } else {
    throw std::invalid_argument(std::string("price field '") + field +
                                "' must be a decimal");
  }
  auto const nanos = Money::parse(text, 6).nanos();
  return nanos / 1000;
}

}  // namespace

PriceTable parse_price_table(std::string_view json_text) {
  json root;
  try {
    root = json::parse(json_text);
  } catch (json::parse_error const& e) {
    throw std::invalid_argument(std::string("malformed price table: ") +
                                e.what());
  }
  if (!root.is_object()) throw std::invalid_argument("price table must be an object");
  PriceTable prices;
  for (auto const* field : {"prompt_rate", "completion_rate"}) {
    if (!root.contains(field)) {
      throw std::invalid_argument(std::string("price table missing '") + field +
                                  "'");
    }
  }
  prices.prompt_rate_micros = parse_rate(root["prompt_rate"], "prompt_rate");
  prices.completion_rate_micros =
      parse_rate(root["completion_rate"], "completion_rate");
  if (auto it = root.find("currency"); it != root.end()) {
    prices.currency_code = it->get<std::string>();
  }
  return prices;
}

std::string serialize_price_table(PriceTable const& prices) {
  nlohmann::ordered_json j;
  j["prompt_rate"] = Money::from_micros(prices.prompt_rate_micros).to_string();
  j["completion_rate"] =
      Money::from_micros(prices.completion_rate_micros).to_string();
  j["currency"] = prices.currency_code;
  return j.dump(2) + "\n";
}

CostReport price_usage(std::array<StageCost, 3> per_stage,
                       PriceTable const& prices) {
  CostReport report;
  report.currency_code = prices.currency_code;
  report.per_stage = per_stage;
  for (auto& stage : report.per_stage) {
    stage.cost = prices.price(stage.prompt_tokens, stage.completion_tokens);
    report.total_prompt_tokens =
        checked_add(report.total_prompt_tokens, stage.prompt_tokens);
    report.total_completion_tokens =
        checked_add(report.total_completion_tokens, stage.completion_tokens);
    report.total_cost = Money::from_nanos(
        checked_add(report.total_cost.nanos(), stage.cost.nanos()));
  }
  return report;
}

CostReport accumulate_cost(std::span<LlmExchange const> exchanges,
                           PriceTable const& prices) {
  std::array<StageCost, 3> stages{};
  for (auto const& ex : exchanges) {
    auto& stage = stages[static_cast<std::size_t>(ex.prompt.kind)];
    stage.prompt_tokens = checked_add(stage.prompt_tokens, ex.prompt_tokens);
    stage.completion_tokens =
        checked_add(stage.completion_tokens, ex.completion_tokens);
    ++stage.requests;
  }
  return price_usage(stages, prices);
}

namespace {

nlohmann::ordered_json stage_json(StageCost const& stage) {
  nlohmann::ordered_json j;
  j["requests"] = stage.requests;
  j["prompt_tokens"] = stage.prompt_tokens;
  j["completion_tokens"] = stage.completion_tokens;
  j["cost"] = stage.cost.to_string();
  j["cost_nanos"] = stage.cost.nanos();
  return j;
}

}  // namespace

std::string cost_to_json(CostReport const& report) {
  nlohmann::ordered_json j;
  j["currency"] = report.currency_code;
  j["total_prompt_tokens"] = report.total_prompt_tokens;
  j["total_completion_tokens"] = report.total_completion_tokens;
  j["total_cost"] = report.total_cost.to_string();
  j["total_cost_nanos"] = report.total_cost.nanos();
  nlohmann::ordered_json stages;
  for (auto kind : kAllPromptKinds) {
    stages[std::string(to_string(kind))] = stage_json(report.stage(kind));
  }
  j["per_stage"] = std::move(stages);
  return j.dump(2);
}

CostReport cost_from_json(std::string_view json_text) {
  try {
    auto const j = json::parse(json_text);
    CostReport report;
    report.currency_code = j.at("currency").get<std::string>();
    report.total_prompt_tokens = j.at("total_prompt_tokens").get<std::int64_t>();
    report.total_completion_tokens =
        j.at("total_completion_tokens").get<std::int64_t>();
    report.total_cost =
        Money::from_nanos(j.at("total_cost_nanos").get<std::int64_t>());
    auto const& stages = j.at("per_stage");
    for (auto kind : kAllPromptKinds) {
      auto const& s = stages.at(std::string(to_string(kind)));
      auto& stage = report.stage(kind);
      stage.requests = s.at("requests").get<std::int64_t>();
      stage.prompt_tokens = s.at("prompt_tokens").get<std::int64_t>();
      stage.completion_tokens = s.at("completion_tokens").get<std::int64_t>();
      stage.cost = Money::from_nanos(s.at("cost_nanos").get<std::int64_t>());
    }
    return report;
  } catch (json::exception const& e) {
    throw std::invalid_argument(std::string("malformed cost report: ") +
                                e.what());
  }
}

std::string cost_to_text(CostReport const& report) {
  std::string out;
  char buf[160];
  std::snprintf(buf, sizeof(buf), "%-12s %9s %14s %14s %16s\n", "stage",
                "requests", "prompt_tok", "completion_tok",
                ("cost " + report.currency_code).c_str());
  out += buf;
  for (auto kind : kAllPromptKinds) {
    auto const& s = report.stage(kind);
    std::snprintf(buf, sizeof(buf), "%-12s %9lld %14lld %14lld %16s\n",
                  std::string(to_string(kind)).c_str(),
                  static_cast<long long>(s.requests),
                  static_cast<long long>(s.prompt_tokens),
                  static_cast<long long>(s.completion_tokens),
                  s.cost.to_string().c_str());
    out += buf;
  }
  std::snprintf(buf, sizeof(buf), "%-12s %9s %14lld %14lld %16s\n", "total", "",
                static_cast<long long>(report.total_prompt_tokens),
                static_cast<long long>(report.total_completion_tokens),
                report.total_cost.to_string().c_str());
  out += buf;
  return out;
}

}  // namespace qaaug

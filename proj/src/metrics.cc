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

#include "qaaug/metrics.h"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cstdio>
#include <unordered_map>

#include "qaaug/unicode.h"

namespace qaaug {

namespace {

std::vector<std::u32string> normalized_tokens(std::string_view text) {
  std::vector<std::u32string> tokens;
  std::u32string current;
  auto flush = [&] {
    if (!current.empty() && current != U"a" && current != U"an" &&
        current != U"the") {
      tokens.push_back(current);
    }
    current.clear();
  };
  for (char32_t c : unicode::decode(text)) {
    c = unicode::to_lower(c);
    if (unicode::is_answer_punctuation(c)) continue;
    if (unicode::is_whitespace(c)) {
      flush();
    } else {
      current.push_back(c);
    }
  }
  flush();
  return tokens;
}

double f1_tokens(std::vector<std::u32string> const& pred,
                 std::vector<std::u32string> const& gold) {
  if (pred.empty() && gold.empty()) return 1.0;
  if (pred.empty() || gold.empty()) return 0.0;
  std::unordered_map<std::u32string, std::size_t> counts;
  for (auto const& t : gold) ++counts[t];
  std::size_t overlap = 0;
  for (auto const& t : pred) {
    auto it = counts.find(t);
    if (it != counts.end() && it->second > 0) {
      --it->second;
      ++overlap;
    }
  }
  if (overlap == 0) return 0.0;
  auto const overlap_d = static_cast<double>(overlap);
  // 2pr/(p+r) with p = o/|pred|, r = o/|gold| simplifies to 2o/(|pred|+|gold|).
  return 2.0 * overlap_d / static_cast<double>(pred.size() + gold.size());
}

}  // namespace

std::string normalize_answer(std::string_view text) {
  std::u32string joined;
  for (auto const& token : normalized_tokens(text)) {
    if (!joined.empty()) joined.push_back(U' ');
    joined += token;
  }
  return unicode::encode(joined);
}

int exact_match(std::string_view prediction,
                std::span<std::string const> golds) {
  auto const pred = normalized_tokens(prediction);
  for (auto const& g : golds) {
    if (normalized_tokens(g) == pred) return 1;
  }
  return 0;
}

double token_f1(std::string_view prediction,
                std::span<std::string const> golds) {
  auto const pred = normalized_tokens(prediction);
  double best = 0.0;
  for (auto const& g : golds) best = std::max(best, f1_tokens(pred, normalized_tokens(g)));
  return best;
}

int exact_match(std::string_view prediction, std::string_view gold) {
  std::string const golds[] = {std::string(gold)};
  return exact_match(prediction, golds);
}

double token_f1(std::string_view prediction, std::string_view gold) {
  std::string const golds[] = {std::string(gold)};
  return token_f1(prediction, golds);
}

EvalReport evaluate(QaDataset const& golds, Predictions const& predictions) {
  EvalReport report;
  std::size_t em_hits = 0;
  std::vector<double> f1s;
  for (auto const& passage : golds.passages) {
    for (auto const& qa : passage.qas) {
      ++report.n_evaluated;
      auto it = predictions.find(qa.id);
      if (it == predictions.end()) {
        report.missing_predictions.push_back(qa.id);
        f1s.push_back(0.0);
        continue;
      }
      std::vector<std::string> answers;
      answers.reserve(qa.answers.size());
      for (auto const& a : qa.answers) answers.push_back(a.text);
      em_hits += static_cast<std::size_t>(exact_match(it->second, answers));
      f1s.push_back(token_f1(it->second, answers));
    }
  }
  std::sort(report.missing_predictions.begin(), report.missing_predictions.end());
  if (report.n_evaluated > 0) {
    // Summing in sorted order makes the result independent of dataset order.
    std::sort(f1s.begin(), f1s.end());
    double f1_sum = 0.0;
    for (double v : f1s) f1_sum += v;
    auto const n = static_cast<double>(report.n_evaluated);
    report.exact_match = 100.0 * static_cast<double>(em_hits) / n;
    report.f1 = 100.0 * f1_sum / n;
  }
  return report;
}

double relative_improvement(double base, double treated) {
  if (base == 0.0) {
    throw DivisionByZero("relative improvement undefined for a zero baseline");
  }
  return 100.0 * (treated - base) / base;
}

namespace {
using json = nlohmann::json;
}

Predictions parse_predictions(std::string_view json_text) {
  json root;
  try {
    root = json::parse(json_text);
  } catch (json::parse_error const& e) {
    throw ParseError("predictions", e.what());
  }
  if (!root.is_object()) {
    throw ParseError("predictions", "expected a JSON object {qa_id: answer}");
  }
  Predictions out;
  for (auto const& [id, answer] : root.items()) {
    if (!answer.is_string()) {
      throw ParseError("predictions." + id, "expected string answer");
    }
    out.emplace(id, answer.get<std::string>());
  }
  return out;
}

std::string report_to_json(EvalReport const& report) {
  nlohmann::ordered_json j;
  j["exact_match"] = report.exact_match;
  j["f1"] = report.f1;
  j["n_evaluated"] = report.n_evaluated;
  j["missing_predictions"] = report.missing_predictions;
  return j.dump(2) + "\n";
}

EvalReport report_from_json(std::string_view json_text) {
  json root;
  try {
    root = json::parse(json_text);
  } catch (json::parse_error const& e) {
    throw ParseError("report", e.what());
  }
  EvalReport report;
  try {
    report.exact_match = root.at("exact_match").get<double>();
    report.f1 = root.at("f1").get<double>();
    if (auto it = root.find("n_evaluated"); it != root.end()) {
      report.n_evaluated = it->get<std::size_t>();
    }
    if (auto it = root.find("missing_predictions"); it != root.end()) {
      report.missing_predictions = it->get<std::vector<std::string>>();
    }
  } catch (json::exception const& e) {
    throw ParseError("report", e.what());
  }
  return report;
}

std::string report_to_text(EvalReport const& report) {
  char buf[128];
  std::string out;
  std::snprintf(buf, sizeof(buf), "%-20s %10.2f\n", "Exact Match",
                report.exact_match);
  out += buf;
  std::snprintf(buf, sizeof(buf), "%-20s %10.2f\n", "F1", report.f1);
  out += buf;
  std::snprintf(buf, sizeof(buf), "%-20s %10zu\n", "Evaluated",
                report.n_evaluated);
  out += buf;
  std::snprintf(buf, sizeof(buf), "%-20s %10zu\n", "Missing predictions",
                report.missing_predictions.size());
  out += buf;
  for (auto const& id : report.missing_predictions) out += "  missing: " + id + "\n";
  return out;
}

}  // namespace qaaug

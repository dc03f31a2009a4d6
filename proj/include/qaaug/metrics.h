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

#ifndef QAAUG_METRICS_H_
#define QAAUG_METRICS_H_

#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "qaaug/dataset.h"

/// SQuAD-style Exact Match and token F1.
namespace qaaug {

class DivisionByZero : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// qa_id -> predicted answer text.
using Predictions = std::map<std::string, std::string, std::less<>>;

struct EvalReport {
  /// Percentages in [0, 100].
  double exact_match = 0.0;
  double f1 = 0.0;
  std::size_t n_evaluated = 0;
  /// Gold ids without a prediction, sorted.
  std::vector<std::string> missing_predictions;
};

/// Lowercases, deletes punctuation (see unicode::is_answer_punctuation),
/// drops the tokens "a", "an" and "the", and joins the remaining tokens with
/// single spaces.
std::string normalize_answer(std::string_view text);

/// 1 if the normalized prediction equals some normalized gold, else 0.
int exact_match(std::string_view prediction,
                std::span<std::string const> golds);

/// Token-multiset F1 between normalized strings, maximized over golds.
/// Both token lists empty scores 1; exactly one empty scores 0.
double token_f1(std::string_view prediction,
                std::span<std::string const> golds);

/// Single-gold conveniences.
int exact_match(std::string_view prediction, std::string_view gold);
double token_f1(std::string_view prediction, std::string_view gold);

/// Averages over every gold pair; a missing prediction scores 0 on both
/// metrics and is listed.
EvalReport evaluate(QaDataset const& golds, Predictions const& predictions);

/// 100 * (treated - base) / base. Throws DivisionByZero when base is 0.
double relative_improvement(double base, double treated);

/// Predictions file: a JSON object {qa_id: answer}.
Predictions parse_predictions(std::string_view json_text);

std::string report_to_json(EvalReport const& report);
/// Reads a report written by report_to_json (only the score fields are
/// required).
EvalReport report_from_json(std::string_view json_text);

/// Aligned plain-text rendering.
std::string report_to_text(EvalReport const& report);

}  // namespace qaaug

#endif  // QAAUG_METRICS_H_

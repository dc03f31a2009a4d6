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

// Shared fixtures for the unit and acceptance tests.

#ifndef QAAUG_TESTS_TEST_SUPPORT_H_
#define QAAUG_TESTS_TEST_SUPPORT_H_

#include <unistd.h>

#include <atomic>
#include <filesystem>
#include <random>
#include <string>
#include <vector>

#include "qaaug/dataset.h"
#include "qaaug/scripted_mock.h"
#include "qaaug/unicode.h"

namespace qaaug::testing {

/// Creates a fresh directory under the system temp dir and removes it on
/// destruction.
class TempDir {
 public:
  TempDir() {
    static std::atomic<int> counter{0};
    path_ = std::filesystem::temp_directory_path() /
            ("qaaug-test-" + std::to_string(::getpid()) + "-" +
             std::to_string(counter++));
    std::filesystem::remove_all(path_);
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ignored;
    std::filesystem::remove_all(path_, ignored);
  }
  TempDir(TempDir const&) = delete;
  TempDir& operator=(TempDir const&) = delete;

  std::filesystem::path const& path() const { return path_; }
  std::filesystem::path operator/(std::string const& name) const {
    return path_ / name;
  }

 private:
  std::filesystem::path path_;
};

/// A small valid training set: one passage per pair, answers planted at
/// known offsets.
inline QaDataset toy_dataset(int pairs, std::string name = "toy") {
  QaDataset d;
  d.name = std::move(name);
  for (int i = 0; i < pairs; ++i) {
    auto const answer = std::to_string(100 + i) + " days";
    Passage p;
    p.title = "Passage " + std::to_string(i);
    p.context = "Policy " + std::to_string(i) + " renews after " + answer +
                " unless cancelled.";
    QaPair qa;
    qa.id = "orig-" + std::to_string(i);
    qa.question = "When does policy " + std::to_string(i) + " renew?";
    auto const pos = p.context.find(answer);
    qa.answers = {{answer, static_cast<std::int64_t>(
                               unicode::length(p.context.substr(0, pos)))}};
    p.qas.push_back(std::move(qa));
    d.passages.push_back(std::move(p));
  }
  return d;
}

/// A mock that answers every stage consistently: each context embeds its
/// request key and a fee, each QA asks for the fee and the re-answer agrees.
inline std::vector<MockRule> agreeable_script() {
  std::vector<MockRule> rules;
  rules.push_back({PromptKind::kContextGen, std::nullopt, std::nullopt,
                   {MockOutcome::reply(
                       "Notice {key}: the renewal fee is $540 per year.")}});
  rules.push_back({PromptKind::kQaGen, std::nullopt, std::nullopt,
                   {MockOutcome::reply(
                       "Question: What is the renewal fee?\nAnswer: $540")}});
  rules.push_back({PromptKind::kReAnswer, std::nullopt, std::nullopt,
                   {MockOutcome::reply("$540")}});
  return rules;
}

inline std::string agreeable_script_json() {
  return R"({"rules": [
  {"kind": "context_gen",
   "responses": ["Notice {key}: the renewal fee is $540 per year."]},
  {"kind": "qa_gen",
   "responses": ["Question: What is the renewal fee?\nAnswer: $540"]},
  {"kind": "reanswer", "responses": ["$540"]}
]}
)";
}

/// Random printable text mixing ASCII and a few multi-byte scalars.
inline std::string random_text(std::mt19937_64& rng, int min_words,
                               int max_words) {
  static constexpr char const* kWords[] = {
      "policy", "renewal", "fee", "coverage", "virus", "café", "naïve",
      "Zürich", "données", "日本", "emoji😀", "claim", "48", "2019", "data",
      "the", "a", "an", "term", "holder"};
  std::uniform_int_distribution<int> count(min_words, max_words);
  std::uniform_int_distribution<std::size_t> pick(0, std::size(kWords) - 1);
  std::string out;
  auto const n = count(rng);
  for (int i = 0; i < n; ++i) {
    if (i > 0) out += ' ';
    out += kWords[pick(rng)];
  }
  return out;
}

/// A random valid dataset with mixed provenance, titles and multi-answer
/// pairs.
inline QaDataset random_dataset(std::mt19937_64& rng, int max_passages = 6) {
  QaDataset d;
  d.name = "random-" + std::to_string(rng() % 1000);
  std::uniform_int_distribution<int> passages(0, max_passages);
  std::uniform_int_distribution<int> qas(0, 3);
  std::uniform_int_distribution<int> answers(1, 2);
  std::bernoulli_distribution coin(0.5);
  int id = 0;
  auto const np = passages(rng);
  for (int p = 0; p < np; ++p) {
    Passage passage;
    if (coin(rng)) passage.title = random_text(rng, 1, 3);
    passage.context = random_text(rng, 4, 30);
    auto const ctx = unicode::decode(passage.context);
    auto const nq = qas(rng);
    for (int q = 0; q < nq; ++q) {
      QaPair qa;
      qa.id = "q" + std::to_string(id++);
      qa.question = random_text(rng, 2, 8) + "?";
      auto const na = answers(rng);
      for (int a = 0; a < na; ++a) {
        std::uniform_int_distribution<std::size_t> start(0, ctx.size() - 1);
        auto const s = start(rng);
        std::uniform_int_distribution<std::size_t> len(1, ctx.size() - s);
        auto const l = len(rng);
        qa.answers.push_back({unicode::encode(std::u32string_view(ctx).substr(s, l)),
                              static_cast<std::int64_t>(s)});
      }
      if (coin(rng)) {
        qa.provenance = Provenance::kSynthetic;
        qa.id = std::string(kSyntheticIdPrefix) + qa.id;
        qa.gen_meta = GenerationMeta{coin(rng) ? 1 : 2,
                                     "s" + std::to_string(rng() % 100),
                                     coin(rng)};
      }
      passage.qas.push_back(std::move(qa));
    }
    d.passages.push_back(std::move(passage));
  }
  return d;
}

}  // namespace qaaug::testing

#endif  // QAAUG_TESTS_TEST_SUPPORT_H_

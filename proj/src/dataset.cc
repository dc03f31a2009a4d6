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

#include "qaaug/dataset.h"

#include <nlohmann/json.hpp>

#include <numeric>
#include <random>
#include <unordered_set>
#include <utility>

#include "qaaug/random.h"
#include "qaaug/unicode.h"

namespace qaaug {

using json = nlohmann::json;
using ordered_json = nlohmann::ordered_json;

ParseError::ParseError(std::string locus, std::string const& message)
    : std::runtime_error(locus + ": " + message), locus_(std::move(locus)) {}

SpanError::SpanError(std::string qa_id, std::string const& message)
    : std::runtime_error("qa '" + qa_id + "': " + message),
      qa_id_(std::move(qa_id)) {}

IdCollision::IdCollision(std::string id)
    : std::runtime_error("duplicate QA id '" + id + "'"), id_(std::move(id)) {}

std::size_t QaDataset::qa_pair_count() const {
  return std::accumulate(
      passages.begin(), passages.end(), std::size_t{0},
      [](std::size_t n, Passage const& p) { return n + p.qas.size(); });
}

bool span_matches(std::u32string_view context, AnswerSpan const& span) {
  if (span.answer_start < 0) return false;
  std::u32string answer;
  try {
    answer = unicode::decode(span.text);
  } catch (unicode::InvalidUtf8 const&) {
    return false;
  }
  auto const start = static_cast<std::size_t>(span.answer_start);
  if (start > context.size() || answer.size() > context.size() - start) {
    return false;
  }
  return context.substr(start, answer.size()) == answer;
}

namespace {

std::string path_of(std::size_t p) {
  return "passages[" + std::to_string(p) + "]";
}

std::string path_of(std::size_t p, std::size_t q) {
  return path_of(p) + ".qas[" + std::to_string(q) + "]";
}

void require_utf8(std::string const& s, std::string const& locus) {
  if (!unicode::is_valid(s)) throw ParseError(locus, "invalid UTF-8");
}

}  // namespace

void validate_dataset(QaDataset const& dataset) {
  std::unordered_set<std::string> ids;
  for (std::size_t p = 0; p < dataset.passages.size(); ++p) {
    auto const& passage = dataset.passages[p];
    require_utf8(passage.context, path_of(p) + ".context");
    if (passage.context.empty()) {
      throw ParseError(path_of(p) + ".context", "context must be non-empty");
    }
    auto const context = unicode::decode(passage.context);
    for (std::size_t q = 0; q < passage.qas.size(); ++q) {
      auto const& qa = passage.qas[q];
      auto const locus = path_of(p, q);
      if (qa.id.empty()) throw ParseError(locus + ".id", "id must be non-empty");
      if (!ids.insert(qa.id).second) {
        throw ParseError(locus + ".id", "duplicate id '" + qa.id + "'");
      }
      require_utf8(qa.question, locus + ".question");
      if (qa.question.empty()) {
        throw ParseError(locus + ".question", "question must be non-empty");
      }
      if (qa.answers.empty()) {
        throw ParseError(locus + ".answers", "at least one answer required");
      }
      bool const synthetic = qa.provenance == Provenance::kSynthetic;
      if (synthetic != qa.gen_meta.has_value()) {
        throw ParseError(locus + ".gen_meta",
                         synthetic ? "synthetic pair without gen_meta"
                                   : "original pair with gen_meta");
      }
      if (qa.gen_meta && qa.gen_meta->shots != 1 && qa.gen_meta->shots != 2) {
        throw ParseError(locus + ".gen_meta.shots", "shots must be 1 or 2");
      }
      for (auto const& answer : qa.answers) {
        if (!span_matches(context, answer)) {
          throw SpanError(qa.id, "answer '" + answer.text +
                                     "' does not match context at offset " +
                                     std::to_string(answer.answer_start));
        }
      }
    }
  }
}

namespace {

std::string line_column(std::string_view text, std::size_t byte) {
  std::size_t line = 1;
  std::size_t column = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
  }
  return std::to_string(line) + ":" + std::to_string(column);
}

json const& member(json const& obj, char const* key, std::string const& locus) {
  auto it = obj.find(key);
  if (it == obj.end()) {
    throw ParseError(locus + "." + key, "missing field");
  }
  return *it;
}

std::string as_string(json const& j, std::string const& locus) {
  if (!j.is_string()) throw ParseError(locus, "expected string");
  return j.get<std::string>();
}

std::int64_t as_integer(json const& j, std::string const& locus) {
  if (!j.is_number_integer()) throw ParseError(locus, "expected integer");
  return j.get<std::int64_t>();
}

json const& as_array(json const& j, std::string const& locus) {
  if (!j.is_array()) throw ParseError(locus, "expected array");
  return j;
}

GenerationMeta parse_gen_meta(json const& j, std::string const& locus) {
  if (!j.is_object()) throw ParseError(locus, "expected object");
  GenerationMeta meta;
  meta.shots = static_cast<int>(
      as_integer(member(j, "shots", locus), locus + ".shots"));
  meta.generation_id = as_string(member(j, "generation_id", locus),
                                 locus + ".generation_id");
  auto const& filtered = member(j, "filtered", locus);
  if (!filtered.is_boolean()) {
    throw ParseError(locus + ".filtered", "expected boolean");
  }
  meta.filtered = filtered.get<bool>();
  return meta;
}

QaPair parse_qa(json const& j, std::string const& locus) {
  if (!j.is_object()) throw ParseError(locus, "expected object");
  QaPair qa;
  qa.id = as_string(member(j, "id", locus), locus + ".id");
  qa.question = as_string(member(j, "question", locus), locus + ".question");
  auto const& answers = as_array(member(j, "answers", locus), locus + ".answers");
  for (std::size_t a = 0; a < answers.size(); ++a) {
    auto const alocus = locus + ".answers[" + std::to_string(a) + "]";
    if (!answers[a].is_object()) throw ParseError(alocus, "expected object");
    AnswerSpan span;
    span.text = as_string(member(answers[a], "text", alocus), alocus + ".text");
    span.answer_start = as_integer(member(answers[a], "answer_start", alocus),
                                   alocus + ".answer_start");
    qa.answers.push_back(std::move(span));
  }
  auto const provenance =
      as_string(member(j, "provenance", locus), locus + ".provenance");
  if (provenance == "original") {
    qa.provenance = Provenance::kOriginal;
  } else if (provenance == "synthetic") {
    qa.provenance = Provenance::kSynthetic;
  } else {
    throw ParseError(locus + ".provenance",
                     "expected \"original\" or \"synthetic\", got \"" +
                         provenance + "\"");
  }
  if (auto it = j.find("gen_meta"); it != j.end() && !it->is_null()) {
    qa.gen_meta = parse_gen_meta(*it, locus + ".gen_meta");
  }
  return qa;
}

}  // namespace

QaDataset parse_dataset(std::string_view json_text) {
  // Tolerate a BOM on input; save_dataset never writes one.
  if (json_text.starts_with("\xEF\xBB\xBF")) json_text.remove_prefix(3);
  json root;
  try {
    root = json::parse(json_text);
  } catch (json::parse_error const& e) {
    throw ParseError(line_column(json_text, e.byte == 0 ? 0 : e.byte - 1),
                     e.what());
  }
  if (!root.is_object()) throw ParseError("$", "expected top-level object");

  QaDataset dataset;
  dataset.name = as_string(member(root, "name", "$"), "name");
  auto const& passages = as_array(member(root, "passages", "$"), "passages");
  dataset.passages.reserve(passages.size());
  for (std::size_t p = 0; p < passages.size(); ++p) {
    auto const locus = path_of(p);
    auto const& jp = passages[p];
    if (!jp.is_object()) throw ParseError(locus, "expected object");
    Passage passage;
    if (auto it = jp.find("title"); it != jp.end() && !it->is_null()) {
      passage.title = as_string(*it, locus + ".title");
    }
    passage.context = as_string(member(jp, "context", locus), locus + ".context");
    auto const& qas = as_array(member(jp, "qas", locus), locus + ".qas");
    passage.qas.reserve(qas.size());
    for (std::size_t q = 0; q < qas.size(); ++q) {
      passage.qas.push_back(parse_qa(qas[q], path_of(p, q)));
    }
    dataset.passages.push_back(std::move(passage));
  }
  validate_dataset(dataset);
  return dataset;
}

std::string serialize_dataset(QaDataset const& dataset) {
  ordered_json root;
  root["name"] = dataset.name;
  auto passages = ordered_json::array();
  for (auto const& passage : dataset.passages) {
    ordered_json jp;
    jp["title"] = passage.title ? ordered_json(*passage.title) : ordered_json();
    jp["context"] = passage.context;
    auto qas = ordered_json::array();
    for (auto const& qa : passage.qas) {
      ordered_json jq;
      jq["id"] = qa.id;
      jq["question"] = qa.question;
      auto answers = ordered_json::array();
      for (auto const& a : qa.answers) {
        answers.push_back({{"text", a.text}, {"answer_start", a.answer_start}});
      }
      jq["answers"] = std::move(answers);
      jq["provenance"] =
          qa.provenance == Provenance::kOriginal ? "original" : "synthetic";
      if (qa.gen_meta) {
        jq["gen_meta"] = {{"shots", qa.gen_meta->shots},
                          {"generation_id", qa.gen_meta->generation_id},
                          {"filtered", qa.gen_meta->filtered}};
      } else {
        jq["gen_meta"] = nullptr;
      }
      qas.push_back(std::move(jq));
    }
    jp["qas"] = std::move(qas);
    passages.push_back(std::move(jp));
  }
  root["passages"] = std::move(passages);
  return root.dump(2) + "\n";
}

QaDataset load_dataset(std::filesystem::path const& path, DatasetFormat format) {
  switch (format) {
    case DatasetFormat::kCanonicalJson:
      break;
  }
  return parse_dataset(read_file(path));
}

void save_dataset(QaDataset const& dataset, std::filesystem::path const& path) {
  write_file_atomic(path, serialize_dataset(dataset));
}

QaDataset merge_datasets(QaDataset const& original,
                         QaDataset const& synthetic) {
  std::unordered_set<std::string_view> ids;
  for (auto const& p : original.passages) {
    for (auto const& qa : p.qas) ids.insert(qa.id);
  }
  for (auto const& p : synthetic.passages) {
    for (auto const& qa : p.qas) {
      if (ids.contains(qa.id)) throw IdCollision(qa.id);
    }
  }
  QaDataset merged = original;
  merged.passages.insert(merged.passages.end(), synthetic.passages.begin(),
                         synthetic.passages.end());
  return merged;
}

std::vector<Exemplar> sample_exemplars(QaDataset const& dataset, int k,
                                       std::uint64_t rng_seed) {
  if (k != 1 && k != 2) {
    throw std::invalid_argument("exemplar count must be 1 or 2");
  }
  std::vector<std::pair<std::size_t, std::size_t>> pool;
  for (std::size_t p = 0; p < dataset.passages.size(); ++p) {
    auto const& qas = dataset.passages[p].qas;
    for (std::size_t q = 0; q < qas.size(); ++q) {
      if (qas[q].provenance == Provenance::kOriginal) pool.emplace_back(p, q);
    }
  }
  auto const want = static_cast<std::size_t>(k);
  if (pool.size() < want) {
    throw InsufficientData("need " + std::to_string(k) +
                           " original QA pairs to sample from, dataset has " +
                           std::to_string(pool.size()));
  }
  // Partial Fisher-Yates: the first k slots end up as a uniform draw
  // without replacement.
  std::mt19937_64 rng(rng_seed);
  std::vector<Exemplar> out;
  out.reserve(want);
  for (std::size_t i = 0; i < want; ++i) {
    auto const j = i + uniform_below(rng, pool.size() - i);
    std::swap(pool[i], pool[j]);
    auto const& passage = dataset.passages[pool[i].first];
    out.push_back({passage.context, passage.qas[pool[i].second]});
  }
  return out;
}

}  // namespace qaaug

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

#ifndef QAAUG_DATASET_H_
#define QAAUG_DATASET_H_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "qaaug/io.h"

/// SQuAD-style extractive QA data: passages with character-offset answers.
namespace qaaug {

/// Malformed dataset file or structurally invalid dataset. `locus` is either
/// "line:column" for JSON syntax errors or a field path such as
/// "passages[2].qas[0].id".
class ParseError : public std::runtime_error {
 public:
  ParseError(std::string locus, std::string const& message);
  std::string const& locus() const { return locus_; }

 private:
  std::string locus_;
};

/// An answer whose text does not match its context at the stated offset.
class SpanError : public std::runtime_error {
 public:
  SpanError(std::string qa_id, std::string const& message);
  std::string const& qa_id() const { return qa_id_; }

 private:
  std::string qa_id_;
};

class IdCollision : public std::runtime_error {
 public:
  explicit IdCollision(std::string id);
  std::string const& id() const { return id_; }

 private:
  std::string id_;
};

class InsufficientData : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct AnswerSpan {
  std::string text;
  /// Offset into the owning context, in Unicode scalar values.
  std::int64_t answer_start = 0;

  bool operator==(AnswerSpan const&) const = default;
};

enum class Provenance { kOriginal, kSynthetic };

struct GenerationMeta {
  int shots = 1;
  std::string generation_id;
  bool filtered = false;

  bool operator==(GenerationMeta const&) const = default;
};

struct QaPair {
  std::string id;
  std::string question;
  std::vector<AnswerSpan> answers;
  Provenance provenance = Provenance::kOriginal;
  /// Present exactly when provenance is kSynthetic.
  std::optional<GenerationMeta> gen_meta;

  bool operator==(QaPair const&) const = default;
};

struct Passage {
  std::optional<std::string> title;
  std::string context;
  std::vector<QaPair> qas;

  bool operator==(Passage const&) const = default;
};

struct QaDataset {
  std::string name;
  std::vector<Passage> passages;

  std::size_t qa_pair_count() const;

  bool operator==(QaDataset const&) const = default;
};

enum class DatasetFormat { kCanonicalJson };

/// Prefix carried by every synthetic QA id; the rest is the generation id.
inline constexpr std::string_view kSyntheticIdPrefix = "syn-";

/// True if `span.text` occurs in `context` at `span.answer_start`.
bool span_matches(std::u32string_view context, AnswerSpan const& span);

/// Checks every dataset invariant. Throws SpanError for offset mismatches
/// and ParseError (with a field path) for everything else.
void validate_dataset(QaDataset const& dataset);

QaDataset parse_dataset(std::string_view json_text);
std::string serialize_dataset(QaDataset const& dataset);

/// Throws IoError if the file cannot be read.
QaDataset load_dataset(std::filesystem::path const& path,
                       DatasetFormat format = DatasetFormat::kCanonicalJson);
void save_dataset(QaDataset const& dataset, std::filesystem::path const& path);

/// Original passages followed by synthetic ones. Throws IdCollision if the
/// id sets intersect.
QaDataset merge_datasets(QaDataset const& original, QaDataset const& synthetic);

/// A QA pair together with the context it is anchored in.
struct ContextQa {
  std::string context;
  QaPair qa;

  bool operator==(ContextQa const&) const = default;
};

using Exemplar = ContextQa;

/// Draws `k` distinct original QA pairs uniformly without replacement.
/// Deterministic in (dataset, k, seed).
std::vector<Exemplar> sample_exemplars(QaDataset const& dataset, int k,
                                       std::uint64_t rng_seed);

}  // namespace qaaug

#endif  // QAAUG_DATASET_H_

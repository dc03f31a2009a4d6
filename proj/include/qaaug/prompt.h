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

#ifndef QAAUG_PROMPT_H_
#define QAAUG_PROMPT_H_

#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "qaaug/dataset.h"

namespace qaaug {

class TemplateError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class PromptKind { kContextGen, kQaGen, kReAnswer };

/// "context_gen", "qa_gen" or "reanswer"; the keys used in template files,
/// mock scripts and cost reports.
std::string_view to_string(PromptKind kind);
PromptKind prompt_kind_from_string(std::string_view name);

/// Skeletons use `{name}` placeholders; `{{` and `}}` produce literal braces.
///
/// user_skeleton may reference {exemplars}, {context} and {question};
/// exemplar_block_skeleton may reference {ex_index}, {ex_context},
/// {ex_question} and {ex_answer}. Which of those are bound depends on the
/// prompt kind, and referencing an unbound one is a TemplateError.
struct PromptTemplate {
  std::string name;
  std::string system_text;
  std::string user_skeleton;
  std::string exemplar_block_skeleton;

  bool operator==(PromptTemplate const&) const = default;
};

struct PromptTemplates {
  PromptTemplate context_gen;
  PromptTemplate qa_gen;
  PromptTemplate reanswer;

  bool operator==(PromptTemplates const&) const = default;
};

struct PromptSpec {
  PromptKind kind = PromptKind::kContextGen;
  std::string rendered_system;
  std::string rendered_user;
  std::vector<std::string> exemplar_ids;
  int shots = 0;

  bool operator==(PromptSpec const&) const = default;
};

/// Substitutes `{name}` placeholders from `fills` in one pass; substituted
/// text is never re-scanned. Throws TemplateError on an unbound placeholder
/// or an unbalanced brace escape.
std::string render_skeleton(std::string_view skeleton,
                            std::map<std::string, std::string> const& fills);

PromptTemplates default_templates();

/// Template file format: a JSON object keyed by "context_gen", "qa_gen" and
/// "reanswer", each {"system": str, "user": str, "exemplar_block": str}.
/// Missing kinds or fields fall back to the defaults.
PromptTemplates parse_templates(std::string_view json_text);
std::string serialize_templates(PromptTemplates const& templates);

PromptSpec build_context_prompt(std::span<std::string const> exemplar_contexts,
                                PromptTemplate const& tmpl, int shots,
                                std::vector<std::string> exemplar_ids = {});

PromptSpec build_qa_prompt(std::span<Exemplar const> exemplars,
                           std::string_view synthetic_context,
                           PromptTemplate const& tmpl, int shots);

/// Zero-shot: the context and question only. The answer under test is not
/// a fill, so no template can leak it.
PromptSpec build_reanswer_prompt(std::string_view synthetic_context,
                                 std::string_view question,
                                 PromptTemplate const& tmpl);

}  // namespace qaaug

#endif  // QAAUG_PROMPT_H_

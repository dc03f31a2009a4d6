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

#include "qaaug/prompt.h"

#include <nlohmann/json.hpp>

#include <cctype>

namespace qaaug {

std::string_view to_string(PromptKind kind) {
  switch (kind) {
    case PromptKind::kContextGen:
      return "context_gen";
    case PromptKind::kQaGen:
      return "qa_gen";
    case PromptKind::kReAnswer:
      return "reanswer";
  }
  return "unknown";
}

PromptKind prompt_kind_from_string(std::string_view name) {
  if (name == "context_gen") return PromptKind::kContextGen;
  if (name == "qa_gen") return PromptKind::kQaGen;
  if (name == "reanswer") return PromptKind::kReAnswer;
  throw std::invalid_argument("unknown prompt kind '" + std::string(name) +
                              "'");
}

namespace {

bool is_placeholder_char(char c) {
  return std::islower(static_cast<unsigned char>(c)) != 0 || c == '_';
}

}  // namespace

std::string render_skeleton(std::string_view skeleton,
                            std::map<std::string, std::string> const& fills) {
  std::string out;
  out.reserve(skeleton.size());
  std::size_t i = 0;
  while (i < skeleton.size()) {
    char const c = skeleton[i];
    if (c == '{' && i + 1 < skeleton.size() && skeleton[i + 1] == '{') {
      out.push_back('{');
      i += 2;
      continue;
    }
    if (c == '}' && i + 1 < skeleton.size() && skeleton[i + 1] == '}') {
      out.push_back('}');
      i += 2;
      continue;
    }
    if (c == '{') {
      std::size_t j = i + 1;
      while (j < skeleton.size() && is_placeholder_char(skeleton[j])) ++j;
      if (j > i + 1 && j < skeleton.size() && skeleton[j] == '}') {
        std::string const name(skeleton.substr(i + 1, j - i - 1));
        auto it = fills.find(name);
        if (it == fills.end()) {
          throw TemplateError("placeholder {" + name +
                              "} is not available in this template");
        }
        out += it->second;
        i = j + 1;
        continue;
      }
    }
    out.push_back(c);
    ++i;
  }
  return out;
}

PromptTemplates default_templates() {
  PromptTemplates t;
  t.context_gen.name = "context_gen";
  t.context_gen.system_text =
      "You write passages for a reading-comprehension dataset. Match the "
      "style, domain, vocabulary and length of the example passages.";
  t.context_gen.exemplar_block_skeleton =
      "Example passage {ex_index}:\n{ex_context}\n\n";
  t.context_gen.user_skeleton =
      "{exemplars}Write one new paragraph-length passage in the same style "
      "and domain as the examples above, covering different facts. Reply "
      "with the passage text only.";

  t.qa_gen.name = "qa_gen";
  t.qa_gen.system_text =
      "You write extractive question-answer pairs for a reading-"
      "comprehension dataset. Every answer is a short span copied verbatim "
      "from its passage.";
  t.qa_gen.exemplar_block_skeleton =
      "Passage:\n{ex_context}\nQuestion: {ex_question}\nAnswer: "
      "{ex_answer}\n\n";
  t.qa_gen.user_skeleton =
      "{exemplars}Passage:\n{context}\n\nWrite exactly one question about "
      "this passage, in the style of the examples, whose answer is a short "
      "span copied verbatim from the passage. Reply in exactly this "
      "layout:\nQuestion: <question>\nAnswer: <answer>";

  t.reanswer.name = "reanswer";
  t.reanswer.system_text =
      "You answer reading-comprehension questions with a short span copied "
      "verbatim from the passage.";
  t.reanswer.exemplar_block_skeleton = "";
  t.reanswer.user_skeleton =
      "Passage:\n{context}\n\nQuestion: {question}\n\nReply with the answer "
      "span only.";
  return t;
}

namespace {

using json = nlohmann::json;
using ordered_json = nlohmann::ordered_json;

void read_template(json const& root, char const* key, PromptTemplate& out) {
  auto it = root.find(key);
  if (it == root.end()) return;
  if (!it->is_object()) {
    throw TemplateError(std::string("template '") + key +
                        "' must be an object");
  }
  auto field = [&](char const* name, std::string& dest) {
    auto f = it->find(name);
    if (f == it->end()) return;
    if (!f->is_string()) {
      throw TemplateError(std::string("template '") + key + "." + name +
                          "' must be a string");
    }
    dest = f->get<std::string>();
  };
  field("system", out.system_text);
  field("user", out.user_skeleton);
  field("exemplar_block", out.exemplar_block_skeleton);
}

}  // namespace

PromptTemplates parse_templates(std::string_view json_text) {
  json root;
  try {
    root = json::parse(json_text);
  } catch (json::parse_error const& e) {
    throw TemplateError(std::string("malformed template file: ") + e.what());
  }
  if (!root.is_object()) throw TemplateError("template file must be an object");
  auto t = default_templates();
  read_template(root, "context_gen", t.context_gen);
  read_template(root, "qa_gen", t.qa_gen);
  read_template(root, "reanswer", t.reanswer);
  return t;
}

std::string serialize_templates(PromptTemplates const& templates) {
  ordered_json root;
  for (auto const* t :
       {&templates.context_gen, &templates.qa_gen, &templates.reanswer}) {
    root[t->name] = {{"system", t->system_text},
                     {"user", t->user_skeleton},
                     {"exemplar_block", t->exemplar_block_skeleton}};
  }
  return root.dump(2) + "\n";
}

namespace {

void check_shots(std::size_t have, int shots) {
  if (shots != 1 && shots != 2) {
    throw TemplateError("shots must be 1 or 2, got " + std::to_string(shots));
  }
  if (have != static_cast<std::size_t>(shots)) {
    throw TemplateError("expected " + std::to_string(shots) +
                        " exemplars, got " + std::to_string(have));
  }
}

}  // namespace

PromptSpec build_context_prompt(std::span<std::string const> exemplar_contexts,
                                PromptTemplate const& tmpl, int shots,
                                std::vector<std::string> exemplar_ids) {
  check_shots(exemplar_contexts.size(), shots);
  if (!exemplar_ids.empty() && exemplar_ids.size() != exemplar_contexts.size()) {
    throw TemplateError("exemplar id count does not match exemplar count");
  }
  std::string blocks;
  for (std::size_t i = 0; i < exemplar_contexts.size(); ++i) {
    blocks += render_skeleton(tmpl.exemplar_block_skeleton,
                              {{"ex_index", std::to_string(i + 1)},
                               {"ex_context", exemplar_contexts[i]}});
  }
  PromptSpec spec;
  spec.kind = PromptKind::kContextGen;
  spec.rendered_system = render_skeleton(tmpl.system_text, {});
  spec.rendered_user = render_skeleton(tmpl.user_skeleton, {{"exemplars", blocks}});
  if (exemplar_ids.empty()) {
    for (std::size_t i = 0; i < exemplar_contexts.size(); ++i) {
      exemplar_ids.push_back("context-" + std::to_string(i + 1));
    }
  }
  spec.exemplar_ids = std::move(exemplar_ids);
  spec.shots = shots;
  return spec;
}

PromptSpec build_qa_prompt(std::span<Exemplar const> exemplars,
                           std::string_view synthetic_context,
                           PromptTemplate const& tmpl, int shots) {
  check_shots(exemplars.size(), shots);
  if (synthetic_context.empty()) {
    throw TemplateError("synthetic context must be non-empty");
  }
  std::string blocks;
  PromptSpec spec;
  for (std::size_t i = 0; i < exemplars.size(); ++i) {
    auto const& ex = exemplars[i];
    if (ex.qa.answers.empty()) {
      throw TemplateError("exemplar '" + ex.qa.id + "' has no answer");
    }
    blocks += render_skeleton(tmpl.exemplar_block_skeleton,
                              {{"ex_index", std::to_string(i + 1)},
                               {"ex_context", ex.context},
                               {"ex_question", ex.qa.question},
                               {"ex_answer", ex.qa.answers.front().text}});
    spec.exemplar_ids.push_back(ex.qa.id);
  }
  spec.kind = PromptKind::kQaGen;
  spec.rendered_system = render_skeleton(tmpl.system_text, {});
  spec.rendered_user = render_skeleton(
      tmpl.user_skeleton,
      {{"exemplars", blocks}, {"context", std::string(synthetic_context)}});
  spec.shots = shots;
  return spec;
}

PromptSpec build_reanswer_prompt(std::string_view synthetic_context,
                                 std::string_view question,
                                 PromptTemplate const& tmpl) {
  if (synthetic_context.empty()) {
    throw TemplateError("context must be non-empty");
  }
  if (question.empty()) throw TemplateError("question must be non-empty");
  PromptSpec spec;
  spec.kind = PromptKind::kReAnswer;
  spec.rendered_system = render_skeleton(tmpl.system_text, {});
  spec.rendered_user =
      render_skeleton(tmpl.user_skeleton,
                      {{"context", std::string(synthetic_context)},
                       {"question", std::string(question)}});
  spec.shots = 0;
  return spec;
}

}  // namespace qaaug

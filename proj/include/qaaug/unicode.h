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

#ifndef QAAUG_UNICODE_H_
#define QAAUG_UNICODE_H_

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

/// UTF-8 helpers. All character offsets in this project count Unicode scalar
/// values, never bytes.
namespace qaaug::unicode {

class InvalidUtf8 : public std::runtime_error {
 public:
  explicit InvalidUtf8(std::size_t byte_offset);
  std::size_t byte_offset() const { return byte_offset_; }

 private:
  std::size_t byte_offset_;
};

/// Decodes UTF-8, throwing InvalidUtf8 on malformed input or surrogates.
std::u32string decode(std::string_view utf8);
std::string encode(std::u32string_view text);

bool is_valid(std::string_view utf8);

/// Number of scalar values in `utf8`.
std::size_t length(std::string_view utf8);

/// Simple (one-to-one) lowercase mapping, so lengths and offsets survive.
char32_t to_lower(char32_t c);
std::u32string to_lower(std::u32string_view text);

/// Unicode general category P* (Pc Pd Ps Pe Pi Pf Po).
bool is_unicode_punctuation(char32_t c);

/// The closed punctuation set used by answer normalization: Unicode P*
/// plus the ASCII symbols `$ + < = > ^ ` | ~` (all of ASCII
/// punctuation as SQuAD-style scorers define it).
bool is_answer_punctuation(char32_t c);

bool is_whitespace(char32_t c);

}  // namespace qaaug::unicode

#endif  // QAAUG_UNICODE_H_

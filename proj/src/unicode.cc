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

#include "qaaug/unicode.h"

#include <unicode/uchar.h>
#include <unicode/utf8.h>

#include <cstdint>

namespace qaaug::unicode {

InvalidUtf8::InvalidUtf8(std::size_t byte_offset)
    : std::runtime_error("invalid UTF-8 at byte " +
                         std::to_string(byte_offset)),
      byte_offset_(byte_offset) {}

namespace {

// Calls `fn(code_point)` for every scalar value; returns the byte offset of
// the first malformed sequence or npos.
template <typename Fn>
std::size_t for_each_code_point(std::string_view utf8, Fn&& fn) {
  auto const* bytes = reinterpret_cast<std::uint8_t const*>(utf8.data());
  auto const size = static_cast<int32_t>(utf8.size());
  int32_t i = 0;
  while (i < size) {
    int32_t const start = i;
    UChar32 c;
    U8_NEXT(bytes, i, size, c);
    if (c < 0) return static_cast<std::size_t>(start);
    fn(static_cast<char32_t>(c));
  }
  return std::string_view::npos;
}

}  // namespace

std::u32string decode(std::string_view utf8) {
  std::u32string out;
  out.reserve(utf8.size());
  auto const bad = for_each_code_point(
      utf8, [&out](char32_t c) { out.push_back(c); });
  if (bad != std::string_view::npos) throw InvalidUtf8(bad);
  return out;
}

std::string encode(std::u32string_view text) {
  std::string out;
  out.reserve(text.size());
  for (char32_t c : text) {
    std::uint8_t buf[U8_MAX_LENGTH];
    int32_t n = 0;
    UBool error = false;
    U8_APPEND(buf, n, U8_MAX_LENGTH, static_cast<UChar32>(c), error);
    if (error) throw InvalidUtf8(out.size());
    out.append(reinterpret_cast<char const*>(buf), static_cast<std::size_t>(n));
  }
  return out;
}

bool is_valid(std::string_view utf8) {
  return for_each_code_point(utf8, [](char32_t) {}) == std::string_view::npos;
}

std::size_t length(std::string_view utf8) {
  std::size_t n = 0;
  auto const bad = for_each_code_point(utf8, [&n](char32_t) { ++n; });
  if (bad != std::string_view::npos) throw InvalidUtf8(bad);
  return n;
}

char32_t to_lower(char32_t c) {
  return static_cast<char32_t>(u_tolower(static_cast<UChar32>(c)));
}

std::u32string to_lower(std::u32string_view text) {
  std::u32string out(text);
  for (auto& c : out) c = to_lower(c);
  return out;
}

bool is_unicode_punctuation(char32_t c) {
  switch (u_charType(static_cast<UChar32>(c))) {
    case U_CONNECTOR_PUNCTUATION:
    case U_DASH_PUNCTUATION:
    case U_START_PUNCTUATION:
    case U_END_PUNCTUATION:
    case U_INITIAL_PUNCTUATION:
    case U_FINAL_PUNCTUATION:
    case U_OTHER_PUNCTUATION:
      return true;
    default:
      return false;
  }
}

bool is_answer_punctuation(char32_t c) {
  switch (c) {
    case U'$':
    case U'+':
    case U'<':
    case U'=':
    case U'>':
    case U'^':
    case U'`':
    case U'|':
    case U'~':
      return true;
    default:
      return is_unicode_punctuation(c);
  }
}

bool is_whitespace(char32_t c) {
  // U+001C..U+001F are information separators that Python's str.split()
  // also breaks on.
  if (c >= 0x1C && c <= 0x1F) return true;
  return u_isUWhiteSpace(static_cast<UChar32>(c)) != 0;
}

}  // namespace qaaug::unicode

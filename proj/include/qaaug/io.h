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

#ifndef QAAUG_IO_H_
#define QAAUG_IO_H_

#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>

namespace qaaug {

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string read_file(std::filesystem::path const& path);

/// Writes to a sibling temporary file and renames it over `path`, so readers
/// never observe a half-written file.
void write_file_atomic(std::filesystem::path const& path,
                       std::string_view content);

/// Hex-encoded SHA-256 of `data`.
std::string sha256_hex(std::string_view data);

}  // namespace qaaug

#endif  // QAAUG_IO_H_

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

#ifndef QAAUG_CLI_H_
#define QAAUG_CLI_H_

#include <iosfwd>
#include <string>
#include <vector>

namespace qaaug::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFatal = 1;
inline constexpr int kExitShortfall = 2;

/// Entry point for the `qaaug` tool: subcommands augment, eval, cost and
/// inspect. `args` excludes the program name. Output goes to `out`,
/// diagnostics to `err`.
int run(std::vector<std::string> const& args, std::ostream& out,
        std::ostream& err);

}  // namespace qaaug::cli

#endif  // QAAUG_CLI_H_

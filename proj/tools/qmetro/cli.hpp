// Copyright 2026 The qmetro Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace qmetro::cli {

inline constexpr const char* kToolVersion = "qmetro 0.1.0";

/// Exit codes shared by every subcommand.
enum ExitCode : int { kOk = 0, kRuntimeError = 1, kUsageError = 2 };

/// Runs the command line `args` (without the program name). Normal output
/// goes to `out`, diagnostics to `err`.
int run(std::vector<std::string> args, std::ostream& out, std::ostream& err);

/// "iter: N loss: L" with L to four decimals.
std::string format_iter_line(int iter, double loss);

}  // namespace qmetro::cli

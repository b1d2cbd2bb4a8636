// Copyright 2026 The WSP Toolkit Authors.
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

#ifndef WSP_TOOLS_CLI_HPP_
#define WSP_TOOLS_CLI_HPP_

#include <iosfwd>
#include <string>
#include <vector>

namespace wsp::cli {

// Exit codes.
inline constexpr int kOk = 0;
inline constexpr int kError = 1;
inline constexpr int kInvalidPlan = 2;
inline constexpr int kSat = 10;
inline constexpr int kUnsat = 20;
inline constexpr int kBudgetExceeded = 30;

/// Runs one command line (without the program name) and returns the exit
/// code. Normal output goes to `out`, diagnostics and timings to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace wsp::cli

#endif  // WSP_TOOLS_CLI_HPP_

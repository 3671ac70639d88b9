// Copyright 2026 The qbath Authors - All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


// Command-line front end of the qbath executable.

#ifndef QBATH_CLI_HPP
#define QBATH_CLI_HPP

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace qbath::cli {

enum ExitCode : int {
  kOk = 0,
  kToleranceFailure = 1,
  kUsageError = 2,
  kNumericalError = 3,
};

/// Runs one invocation. `argv[0]` is the program name. Results go to `out`
/// unless an output path is given; diagnostics go to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

/// Comma-separated items, each a number or an inclusive `start:stop:step`
/// range. Throws std::invalid_argument on malformed text.
std::vector<double> parse_grid(std::string_view text);

/// Scientific notation with 12 significant digits; `inf`, `-inf`, `nan`.
std::string format_number(double v);

}  // namespace qbath::cli

#endif  // QBATH_CLI_HPP

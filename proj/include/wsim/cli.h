// Copyright 2026 The wsim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef WSIM_CLI_H
#define WSIM_CLI_H

#include <iosfwd>
#include <string>
#include <vector>

namespace wsim {

/// Process exit codes of the command-line driver.
enum ExitCode : int {
    kExitOk = 0,
    kExitNumeric = 1,
    kExitConfig = 2,
    kExitDiagonals = 3,
    kExitGridTooLarge = 4,
};

/// Runs one command line (args excludes the program name). Documents go to
/// `out` unless an output path is configured; diagnostics go to `err`.
int run_cli(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

}  // namespace wsim

#endif

/*
 Copyright 2026 The niquad Authors

 Licensed under the Apache License, Version 2.0 (the "License");
 you may not use this file except in compliance with the License.
 You may obtain a copy of the License at

      https://www.apache.org/licenses/LICENSE-2.0

 Unless required by applicable law or agreed to in writing, software
 distributed under the License is distributed on an "AS IS" BASIS,
 WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 See the License for the specific language governing permissions and
 limitations under the License.
*/

#ifndef NIQUAD_CLI_HPP
#define NIQUAD_CLI_HPP

#include <ostream>
#include <string>
#include <vector>

namespace niquad {

/// Process exit statuses of the command-line front end.
enum ExitStatus : int {
    kExitOk = 0,
    kExitFailed = 1,  // constraint or verdict failure
    kExitUsage = 2,
    kExitIo = 3,
};

/// Environment variable that, when set, prefixes relative output paths.
inline constexpr const char* kOutputDirEnv = "NIQUAD_OUTPUT_DIR";

/// Runs one CLI invocation; `args` excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace niquad

#endif  // NIQUAD_CLI_HPP

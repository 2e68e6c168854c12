// Copyright 2026 The plantedbins Authors.
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

#ifndef PLANTEDBINS_CLI_H_
#define PLANTEDBINS_CLI_H_

#include <ostream>
#include <string>
#include <vector>

namespace plantedbins {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitRuntime = 2;

// Runs the command line `args` (args[0] is the program name). Data goes to
// `out` and nothing else does; diagnostics, warnings and usage text go to
// `err`.
int RunCli(const std::vector<std::string>& args, std::ostream& out,
           std::ostream& err);

}  // namespace plantedbins

#endif  // PLANTEDBINS_CLI_H_

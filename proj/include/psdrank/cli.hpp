// Copyright 2026 The psdrank Authors
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

namespace psdrank::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailed = 1;  // verification or reproduction failure
inline constexpr int kExitUsage = 2;   // bad arguments or malformed input

/// Subcommands: gen, bounds, factorize, verify, protocol, reproduce.
/// `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

int run(int argc, char** argv);

}  // namespace psdrank::cli

// Copyright 2026 The vecmap Authors
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

#ifndef VECMAP_TOOLS__CLI_HPP_
#define VECMAP_TOOLS__CLI_HPP_

#include <ostream>
#include <string>
#include <vector>

namespace vecmap::cli
{

// Exit codes.
inline constexpr int kOk = 0;
inline constexpr int kCheckFailed = 1;
inline constexpr int kUnwritable = 2;
inline constexpr int kMissingFrame = 3;
inline constexpr int kMalformed = 4;
inline constexpr int kUnpairable = 5;
inline constexpr int kUsage = 64;

/// Runs one subcommand. args excludes the program name.
int run(const std::vector<std::string> & args, std::ostream & out, std::ostream & err);

}  // namespace vecmap::cli

#endif  // VECMAP_TOOLS__CLI_HPP_

// Copyright 2026 The plrank Authors
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

// plrank command-line front end: generate, sample, train, recover, eval and
// replay. Every run writes "<output>.manifest.json" holding the resolved
// parameters; `plrank replay <manifest>` re-executes it.

#ifndef PLRANK_TOOLS_CLI_H_
#define PLRANK_TOOLS_CLI_H_

#include <ostream>

namespace plrank::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitIo = 3;

inline constexpr const char* kSeedEnvVar = "PLRANK_SEED";

int Run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace plrank::cli

#endif  // PLRANK_TOOLS_CLI_H_

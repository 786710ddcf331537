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

#ifndef PLRANK_RANDOM_H_
#define PLRANK_RANDOM_H_

#include <cstdint>
#include <random>

namespace plrank {

// The randomness source threaded through every stochastic operation. Always
// owned by the caller; library code never seeds or stores one.
using Rng = std::mt19937_64;

inline Rng MakeRng(std::uint64_t seed) { return Rng(seed); }

}  // namespace plrank

#endif  // PLRANK_RANDOM_H_

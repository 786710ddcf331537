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

#ifndef PLRANK_INTERNAL_DRAW_H_
#define PLRANK_INTERNAL_DRAW_H_

#include <algorithm>
#include <cstddef>
#include <iterator>
#include <random>
#include <vector>

#include "plrank/random.h"

namespace plrank::internal {

// Uniformly random n-subset of `pool` (n <= pool.size()), in draw order.
inline std::vector<std::size_t> DrawDistinct(const std::vector<std::size_t>& pool,
                                             std::size_t n, Rng& rng) {
  std::vector<std::size_t> picked;
  picked.reserve(n);
  if (4 * n <= pool.size() && n <= 64) {
    std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
    while (picked.size() < n) {
      const std::size_t idx = pool[pick(rng)];
      if (std::find(picked.begin(), picked.end(), idx) == picked.end()) {
        picked.push_back(idx);
      }
    }
  } else {
    std::sample(pool.begin(), pool.end(), std::back_inserter(picked), n, rng);
    std::shuffle(picked.begin(), picked.end(), rng);
  }
  return picked;
}

}  // namespace plrank::internal

#endif  // PLRANK_INTERNAL_DRAW_H_

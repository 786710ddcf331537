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

#include "plrank/rum_sim.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <utility>

#include "plrank/errors.h"

namespace plrank {

LatentUtilities::LatentUtilities(std::vector<double> z, NoiseKind noise_kind,
                                 double noise_scale)
    : z_(std::move(z)), noise_kind_(noise_kind), noise_scale_(noise_scale) {
  if (z_.size() < 2) throw DomainError("need at least 2 latent utilities");
  for (double v : z_) {
    if (!std::isfinite(v)) throw DomainError("latent utility is not finite");
  }
  if (!(noise_scale_ > 0.0) || !std::isfinite(noise_scale_)) {
    throw DomainError("noise scale must be positive and finite");
  }
}

ScoreVector LatentUtilities::EquivalentPlScores() const {
  std::vector<double> w(z_.size());
  std::transform(z_.begin(), z_.end(), w.begin(), [](double v) { return -v; });
  return ScoreVector(std::move(w));
}

Ranking RumSampleRanking(const LatentUtilities& u, Rng& rng) {
  const std::size_t n = u.size();
  std::vector<double> measured(n);
  if (u.noise_kind() == NoiseKind::kGumbel) {
    std::extreme_value_distribution<double> gumbel(0.0, 1.0);
    for (std::size_t i = 0; i < n; ++i) {
      measured[i] = u.z()[i] - u.noise_scale() * gumbel(rng);
    }
  } else {
    std::normal_distribution<double> gauss(0.0, u.noise_scale());
    for (std::size_t i = 0; i < n; ++i) measured[i] = u.z()[i] + gauss(rng);
  }
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return measured[a] < measured[b];
  });
  return Ranking(std::move(order));
}

std::vector<Ranking> RumDataset(const LatentUtilities& u, std::size_t count,
                                Rng& rng) {
  if (count == 0) throw DomainError("dataset size must be at least 1");
  std::vector<Ranking> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) out.push_back(RumSampleRanking(u, rng));
  return out;
}

}  // namespace plrank

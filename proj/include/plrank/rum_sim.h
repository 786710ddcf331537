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

// Thurstone-style random utility simulator. Each latent depth z_i is observed
// as X_i = z_i + eps_i and the observed ranking lists items by ascending X
// (closest first).
//
// With Gumbel noise the error term is the reflected (minimum) Gumbel,
// eps = -scale * g with g a standard Gumbel variate. Ascending order of
// z - g is descending order of -z + g, so for scale 1 the rankings follow the
// PL model with parameters v_i = exp(-z_i).

#ifndef PLRANK_RUM_SIM_H_
#define PLRANK_RUM_SIM_H_

#include <cstddef>
#include <vector>

#include "plrank/pl_core.h"
#include "plrank/random.h"

namespace plrank {

enum class NoiseKind { kGumbel, kGaussian };

class LatentUtilities {
 public:
  // Throws DomainError on non-finite z, fewer than 2 items or a
  // non-positive noise scale.
  LatentUtilities(std::vector<double> z, NoiseKind noise_kind,
                  double noise_scale = 1.0);

  const std::vector<double>& z() const { return z_; }
  std::size_t size() const { return z_.size(); }
  NoiseKind noise_kind() const { return noise_kind_; }
  double noise_scale() const { return noise_scale_; }

  // PL scores equivalent to this model under Gumbel noise of scale 1: -z.
  ScoreVector EquivalentPlScores() const;

 private:
  std::vector<double> z_;
  NoiseKind noise_kind_;
  double noise_scale_;
};

Ranking RumSampleRanking(const LatentUtilities& u, Rng& rng);

// `count` i.i.d. draws of RumSampleRanking. Throws DomainError if count == 0.
std::vector<Ranking> RumDataset(const LatentUtilities& u, std::size_t count,
                                Rng& rng);

}  // namespace plrank

#endif  // PLRANK_RUM_SIM_H_

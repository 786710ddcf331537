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

// Informativeness-guided sampling of n-ary training rankings from a depth map.
//
// N * R candidate sets of n valid pixels are drawn, each is ordered by ground
// truth depth and scored by the sum of adjacent depth gaps plus a penalty for
// every adjacent pair whose depths are within a ratio of 1 + tau. The R best
// scoring sets are kept.

#ifndef PLRANK_RANKING_SAMPLER_H_
#define PLRANK_RANKING_SAMPLER_H_

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "plrank/depth_map.h"
#include "plrank/pl_core.h"
#include "plrank/random.h"

namespace plrank {

struct SamplerConfig {
  int ranking_size = 5;          // n
  int rankings_per_image = 400;  // R
  int oversample_factor = 5;     // N, must exceed 1
  double tau = 0.03;             // tau = 0 disables the penalty
  double penalty = -10.0;
  int num_threads = 1;

  // Throws DomainError if n < 2, R < 1, N < 2 or tau < 0.
  void Validate() const;
};

struct RankingSample {
  // Pixels in candidate draw order.
  std::vector<Location> locations;
  // Ranking over indices into `locations`, closest first.
  Ranking ground_truth;
  double informativeness = 0.0;
  // Multiplicity in the training objective; aggregated duplicates carry
  // their count.
  double weight = 1.0;

  // Locations arranged closest first.
  std::vector<Location> OrderedLocations() const;
};

struct CandidateScore {
  Ranking ground_truth;
  double informativeness = 0.0;
};

// True if depths a, b are treated as indistinguishable:
// max(a/b, b/a) < 1 + tau, with 0/0 taken as ratio 1 and x/0 (x > 0) as +inf.
bool NearEqualDepths(double a, double b, double tau);

// Ground-truth ranking by ascending depth (ties by ascending row-major pixel
// index) and penalised adjacent-gap informativeness. Throws DomainError for
// fewer than 2 locations, duplicates, or out-of-bounds or masked pixels.
CandidateScore ScoreCandidate(std::span<const Location> locations,
                              const DepthMap& map, const SamplerConfig& cfg);

// The seeded stream of N * R candidate sets, each with n distinct valid
// pixels drawn uniformly. Sets are drawn independently and may overlap.
// Throws CapacityError if the map has fewer than n valid pixels.
std::vector<std::vector<Location>> DrawCandidateSets(const DepthMap& map,
                                                     const SamplerConfig& cfg,
                                                     Rng& rng);

// Top R candidates of DrawCandidateSets by informativeness, descending; equal
// informativeness keeps candidate stream order.
std::vector<RankingSample> SampleRankings(const DepthMap& map,
                                          const SamplerConfig& cfg, Rng& rng);

// Line format: "row,col;row,col;... | informativeness", locations closest
// first, 0-based coordinates.
std::string FormatRankingSample(const RankingSample& sample);
// Parsed samples list locations closest first with an identity ranking.
// Throws FormatError.
RankingSample ParseRankingSample(std::string_view line);

// A rankings file holds one or more epoch blocks. With several blocks each
// starts with a "# epoch <k>" line; a single block is written bare.
void WriteRankingsFile(const std::string& path,
                       const std::vector<std::vector<RankingSample>>& epochs);
std::vector<std::vector<RankingSample>> ReadRankingsFile(const std::string& path);

}  // namespace plrank

#endif  // PLRANK_RANKING_SAMPLER_H_

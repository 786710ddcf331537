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

// Depth-ordering evaluation: ordinal error on pixel pairs, nDCG with
// relevance 1 / (D + 1) on pixel sets, RMSE against capacity-normalised
// truth, and the delta > 1.25 ratio metric.

#ifndef PLRANK_EVAL_METRICS_H_
#define PLRANK_EVAL_METRICS_H_

#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "plrank/depth_map.h"
#include "plrank/random.h"

namespace plrank {

// r(l1, l2, D): +1 if D[l1] > D[l2] (l1 is farther), -1 if D[l2] > D[l1],
// 0 otherwise.
enum class OrdinalRelation : int { kFarther = 1, kCloser = -1, kEqual = 0 };

// Which way a prediction grid points.
enum class Orientation {
  kHigherIsCloser,  // PL scores
  kLowerIsCloser,   // depth maps
};

struct Prediction {
  Grid values;
  Orientation orientation = Orientation::kLowerIsCloser;

  // Value on the depth axis (lower = closer): negated for score grids.
  double DepthLike(Location l) const {
    const double v = values.at(l);
    return orientation == Orientation::kHigherIsCloser ? -v : v;
  }
};

using LocationPair = std::pair<Location, Location>;

// With threshold > 0 depths whose max-ratio is below 1 + threshold compare
// equal. Throws DomainError for masked or out-of-bounds locations.
OrdinalRelation GroundTruthRelation(Location l1, Location l2, const DepthMap& map,
                                    double threshold = 0.0);
// Strict comparison of the prediction's depth-like values.
OrdinalRelation PredictedRelation(Location l1, Location l2, const Prediction& pred);

// Fraction of pairs with a non-zero ground-truth relation whose predicted
// relation differs. Throws UndefinedMetricError if every pair is equal in
// ground truth.
double OrdinalError(const Prediction& pred, const DepthMap& truth,
                    std::span<const LocationPair> pairs,
                    std::size_t* retained_pairs = nullptr);

double Relevance(double depth);

// DCG of locations listed closest first under depth map `truth`.
double Dcg(std::span<const Location> ordered, const DepthMap& truth);

// Mean over sets of DCG(predicted order) / DCG(ideal order). Predicted order
// is by ascending depth-like value, ties by row-major index. Throws
// DomainError for sets with fewer than 2 or repeated or masked locations.
double Ndcg(const Prediction& pred, const DepthMap& truth,
            std::span<const std::vector<Location>> sets);

// sqrt(mean over valid pixels of ((pred - truth) / capacity)^2). Throws
// DomainError if capacity <= 0.
double Rmse(const Grid& pred, const DepthMap& truth, double max_capacity);

// Percentage of valid pixels with truth z > 0 whose max(p/z, z/p) exceeds
// 1.25. Throws UndefinedMetricError when no such pixel exists and
// DomainError for a non-positive prediction on a counted pixel.
double DeltaMetric(const Grid& pred, const DepthMap& truth,
                   std::size_t* excluded_zero_depth = nullptr);

inline constexpr std::size_t kDefaultEvalPairs = 50000;
inline constexpr std::size_t kDefaultRankingSets = 100;
inline constexpr std::size_t kDefaultRankingSetSize = 500;

// Pairs of two distinct valid pixels, uniform and seeded. Pairs equal in
// ground truth are kept. Throws CapacityError with fewer than 2 valid pixels.
std::vector<LocationPair> SampleEvalPairs(const DepthMap& map, std::size_t count,
                                          Rng& rng);
// Sets of `size` distinct valid pixels. Throws CapacityError if the map has
// fewer valid pixels than `size`, DomainError if size < 2.
std::vector<std::vector<Location>> SampleEvalRankingSets(const DepthMap& map,
                                                         std::size_t count,
                                                         std::size_t size,
                                                         Rng& rng);

}  // namespace plrank

#endif  // PLRANK_EVAL_METRICS_H_

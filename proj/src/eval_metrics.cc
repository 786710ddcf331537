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

#include "plrank/eval_metrics.h"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "internal/draw.h"
#include "plrank/errors.h"
#include "plrank/ranking_sampler.h"

namespace plrank {
namespace {

void CheckShape(const Grid& pred, const DepthMap& truth) {
  if (pred.height() != truth.height() || pred.width() != truth.width()) {
    throw DomainError("prediction grid and ground truth differ in shape");
  }
}

void CheckValid(Location l, const DepthMap& map) {
  if (!map.valid(l)) throw DomainError("location is masked in ground truth");
}

// Locations sorted closest first by `key` (ascending), ties by row-major index.
template <typename Key>
std::vector<Location> SortedClosestFirst(std::span<const Location> set,
                                         const DepthMap& map, Key key) {
  std::vector<Location> out(set.begin(), set.end());
  std::sort(out.begin(), out.end(), [&](const Location& a, const Location& b) {
    const double ka = key(a);
    const double kb = key(b);
    if (ka != kb) return ka < kb;
    return map.Index(a) < map.Index(b);
  });
  return out;
}

}  // namespace

OrdinalRelation GroundTruthRelation(Location l1, Location l2, const DepthMap& map,
                                    double threshold) {
  CheckValid(l1, map);
  CheckValid(l2, map);
  const double d1 = map.depth(l1);
  const double d2 = map.depth(l2);
  if (threshold > 0.0 && NearEqualDepths(d1, d2, threshold)) {
    return OrdinalRelation::kEqual;
  }
  if (d1 > d2) return OrdinalRelation::kFarther;
  if (d2 > d1) return OrdinalRelation::kCloser;
  return OrdinalRelation::kEqual;
}

OrdinalRelation PredictedRelation(Location l1, Location l2, const Prediction& pred) {
  if (!pred.values.InBounds(l1) || !pred.values.InBounds(l2)) {
    throw DomainError("location out of prediction bounds");
  }
  const double p1 = pred.DepthLike(l1);
  const double p2 = pred.DepthLike(l2);
  if (p1 > p2) return OrdinalRelation::kFarther;
  if (p2 > p1) return OrdinalRelation::kCloser;
  return OrdinalRelation::kEqual;
}

double OrdinalError(const Prediction& pred, const DepthMap& truth,
                    std::span<const LocationPair> pairs,
                    std::size_t* retained_pairs) {
  CheckShape(pred.values, truth);
  std::size_t retained = 0;
  std::size_t wrong = 0;
  for (const auto& [l1, l2] : pairs) {
    const OrdinalRelation gt = GroundTruthRelation(l1, l2, truth);
    if (gt == OrdinalRelation::kEqual) continue;
    ++retained;
    if (PredictedRelation(l1, l2, pred) != gt) ++wrong;
  }
  if (retained_pairs) *retained_pairs = retained;
  if (retained == 0) {
    throw UndefinedMetricError("ordinal error undefined: every pair is equal in ground truth");
  }
  return static_cast<double>(wrong) / static_cast<double>(retained);
}

double Relevance(double depth) { return 1.0 / (depth + 1.0); }

double Dcg(std::span<const Location> ordered, const DepthMap& truth) {
  double dcg = 0.0;
  for (std::size_t i = 0; i < ordered.size(); ++i) {
    // Rank i+1 is discounted by log2(i + 2).
    dcg += Relevance(truth.depth(ordered[i])) / std::log2(static_cast<double>(i) + 2.0);
  }
  return dcg;
}

double Ndcg(const Prediction& pred, const DepthMap& truth,
            std::span<const std::vector<Location>> sets) {
  CheckShape(pred.values, truth);
  if (sets.empty()) throw UndefinedMetricError("nDCG needs at least one ranking set");
  double total = 0.0;
  for (const auto& set : sets) {
    if (set.size() < 2) throw DomainError("nDCG ranking set needs at least 2 locations");
    std::vector<std::size_t> idx;
    idx.reserve(set.size());
    for (const Location& l : set) {
      CheckValid(l, truth);
      idx.push_back(truth.Index(l));
    }
    std::sort(idx.begin(), idx.end());
    if (std::adjacent_find(idx.begin(), idx.end()) != idx.end()) {
      throw DomainError("nDCG ranking set repeats a location");
    }
    const auto predicted = SortedClosestFirst(
        set, truth, [&](const Location& l) { return pred.DepthLike(l); });
    const auto ideal = SortedClosestFirst(
        set, truth, [&](const Location& l) { return truth.depth(l); });
    total += Dcg(predicted, truth) / Dcg(ideal, truth);
  }
  return total / static_cast<double>(sets.size());
}

double Rmse(const Grid& pred, const DepthMap& truth, double max_capacity) {
  CheckShape(pred, truth);
  if (!(max_capacity > 0.0) || !std::isfinite(max_capacity)) {
    throw DomainError("max depth capacity must be positive");
  }
  double sq = 0.0;
  std::size_t count = 0;
  for (std::size_t i : truth.ValidIndices()) {
    const double d = pred.values()[i] / max_capacity - truth.values()[i] / max_capacity;
    sq += d * d;
    ++count;
  }
  if (count == 0) throw UndefinedMetricError("RMSE undefined: no valid pixels");
  return std::sqrt(sq / static_cast<double>(count));
}

double DeltaMetric(const Grid& pred, const DepthMap& truth,
                   std::size_t* excluded_zero_depth) {
  CheckShape(pred, truth);
  std::size_t counted = 0;
  std::size_t exceeded = 0;
  std::size_t excluded = 0;
  for (std::size_t i : truth.ValidIndices()) {
    const double z = truth.values()[i];
    if (z <= 0.0) {
      ++excluded;
      continue;
    }
    const double p = pred.values()[i];
    if (!(p > 0.0)) throw DomainError("delta metric needs positive predictions");
    ++counted;
    if (std::max(p / z, z / p) > 1.25) ++exceeded;
  }
  if (excluded_zero_depth) *excluded_zero_depth = excluded;
  if (counted == 0) {
    throw UndefinedMetricError("delta metric undefined: no valid pixel with positive depth");
  }
  return 100.0 * static_cast<double>(exceeded) / static_cast<double>(counted);
}

std::vector<LocationPair> SampleEvalPairs(const DepthMap& map, std::size_t count,
                                          Rng& rng) {
  const std::vector<std::size_t> valid = map.ValidIndices();
  if (valid.size() < 2) throw CapacityError("need at least 2 valid pixels for pairs");
  std::vector<LocationPair> pairs;
  pairs.reserve(count);
  for (std::size_t k = 0; k < count; ++k) {
    const auto two = internal::DrawDistinct(valid, 2, rng);
    pairs.emplace_back(map.LocationOf(two[0]), map.LocationOf(two[1]));
  }
  return pairs;
}

std::vector<std::vector<Location>> SampleEvalRankingSets(const DepthMap& map,
                                                         std::size_t count,
                                                         std::size_t size,
                                                         Rng& rng) {
  if (size < 2) throw DomainError("ranking set size must be at least 2");
  const std::vector<std::size_t> valid = map.ValidIndices();
  if (valid.size() < size) {
    throw CapacityError("map has " + std::to_string(valid.size()) +
                        " valid pixels, ranking set size is " + std::to_string(size));
  }
  std::vector<std::vector<Location>> sets(count);
  for (auto& set : sets) {
    for (std::size_t idx : internal::DrawDistinct(valid, size, rng)) {
      set.push_back(map.LocationOf(idx));
    }
  }
  return sets;
}

}  // namespace plrank

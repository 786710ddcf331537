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

// Plackett-Luce distribution over rankings of scored items.
//
// Scores are kept in the log domain: item i has raw score w_i and PL
// parameter v_i = exp(w_i). A ranking lists item indices from the top rank
// (largest v, the closest pixel in depth applications) downwards. Rankings of
// a subset of the items are scored under the marginal PL model on that
// subset, which is again PL with the same parameters.
//
// All indices are 0-based.

#ifndef PLRANK_PL_CORE_H_
#define PLRANK_PL_CORE_H_

#include <compare>
#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "plrank/random.h"

namespace plrank {

// Finite log-domain PL scores, K >= 1.
class ScoreVector {
 public:
  // Throws DomainError if `scores` is empty or has a non-finite entry.
  explicit ScoreVector(std::vector<double> scores);

  std::size_t size() const { return scores_.size(); }
  double operator[](std::size_t i) const { return scores_[i]; }
  std::span<const double> values() const { return scores_; }

 private:
  std::vector<double> scores_;
};

// Sequence of pairwise distinct item indices, top rank first.
class Ranking {
 public:
  Ranking() = default;
  // Throws DomainError on duplicate indices.
  explicit Ranking(std::vector<std::size_t> order);

  // Identity ranking (0, 1, ..., n-1).
  static Ranking Identity(std::size_t n);

  std::size_t size() const { return order_.size(); }
  std::size_t operator[](std::size_t i) const { return order_[i]; }
  std::span<const std::size_t> order() const { return order_; }

  friend bool operator==(const Ranking&, const Ranking&) = default;
  friend auto operator<=>(const Ranking&, const Ranking&) = default;

 private:
  std::vector<std::size_t> order_;
};

// log P(ranking | exp(scores)) under the marginal PL model on the ranked
// items. Requires ranking.size() >= 2 and every index < scores.size().
double PlLogProbability(const Ranking& ranking, const ScoreVector& scores);

// Gradient of -PlLogProbability with respect to every raw score (length K).
// Items absent from the ranking get 0.
std::vector<double> PlNllGradient(const Ranking& ranking,
                                  const ScoreVector& scores);

// Negative log-likelihood and its gradient in one sweep; `gradient` must have
// length K and is overwritten.
double PlNllAndGradient(const Ranking& ranking, const ScoreVector& scores,
                        std::span<double> gradient);

// Draws a ranking of `n` items. The items are a uniformly random subset of
// size n (all items when n == K) ranked by perturbing their scores with
// i.i.d. standard Gumbel noise, which yields exactly the marginal PL
// distribution over the chosen subset. Throws DomainError if n > K or n == 0.
Ranking PlSample(const ScoreVector& scores, std::size_t n, Rng& rng);

// Same as above for an explicit subset of item indices.
Ranking PlSampleSubset(const ScoreVector& scores,
                       std::span<const std::size_t> items, Rng& rng);

// Most probable full ranking: indices by descending score, ties broken by
// ascending index.
Ranking PlMode(const ScoreVector& scores);

inline constexpr std::size_t kMaxEnumerationSize = 8;

// Every full ranking with its probability, in lexicographic order of the
// index sequences. Throws CapacityError if K > kMaxEnumerationSize.
std::vector<std::pair<Ranking, double>> PlEnumerate(const ScoreVector& scores);

}  // namespace plrank

#endif  // PLRANK_PL_CORE_H_

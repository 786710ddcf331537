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

#include "plrank/pl_core.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <string>

#include "plrank/errors.h"

namespace plrank {
namespace {

void CheckRankable(const Ranking& ranking, const ScoreVector& scores) {
  if (ranking.size() < 2) {
    throw DomainError("ranking needs at least 2 items, got " +
                      std::to_string(ranking.size()));
  }
  for (std::size_t idx : ranking.order()) {
    if (idx >= scores.size()) {
      throw DomainError("ranking index " + std::to_string(idx) +
                        " out of range for " + std::to_string(scores.size()) +
                        " scores");
    }
  }
}

double LogAddExp(double a, double b) {
  if (a == -std::numeric_limits<double>::infinity()) return b;
  const double hi = std::max(a, b);
  const double lo = std::min(a, b);
  return hi + std::log1p(std::exp(lo - hi));
}

// suffix[i] = log sum_{k >= i} exp(w_{pi(k)}), accumulated from the bottom
// rank upwards with a running maximum.
std::vector<double> SuffixLogSumExp(const Ranking& ranking,
                                    const ScoreVector& scores) {
  const std::size_t n = ranking.size();
  std::vector<double> suffix(n);
  double running_max = -std::numeric_limits<double>::infinity();
  double scaled_sum = 0.0;
  for (std::size_t k = n; k-- > 0;) {
    const double w = scores[ranking[k]];
    if (w > running_max) {
      scaled_sum = scaled_sum * std::exp(running_max - w) + 1.0;
      running_max = w;
    } else {
      scaled_sum += std::exp(w - running_max);
    }
    suffix[k] = running_max + std::log(scaled_sum);
  }
  return suffix;
}

}  // namespace

ScoreVector::ScoreVector(std::vector<double> scores)
    : scores_(std::move(scores)) {
  if (scores_.empty()) throw DomainError("score vector must be non-empty");
  for (double w : scores_) {
    if (!std::isfinite(w)) throw DomainError("score vector has non-finite entry");
  }
}

Ranking::Ranking(std::vector<std::size_t> order) : order_(std::move(order)) {
  std::vector<std::size_t> sorted = order_;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw DomainError("ranking contains a duplicate index");
  }
}

Ranking Ranking::Identity(std::size_t n) {
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  return Ranking(std::move(order));
}

double PlLogProbability(const Ranking& ranking, const ScoreVector& scores) {
  CheckRankable(ranking, scores);
  const std::vector<double> suffix = SuffixLogSumExp(ranking, scores);
  double log_prob = 0.0;
  for (std::size_t i = 0; i + 1 < ranking.size(); ++i) {
    log_prob += scores[ranking[i]] - suffix[i];
  }
  return std::min(log_prob, 0.0);
}

double PlNllAndGradient(const Ranking& ranking, const ScoreVector& scores,
                        std::span<double> gradient) {
  CheckRankable(ranking, scores);
  if (gradient.size() != scores.size()) {
    throw DomainError("gradient buffer length must equal the number of scores");
  }
  std::fill(gradient.begin(), gradient.end(), 0.0);
  const std::size_t n = ranking.size();
  const std::vector<double> suffix = SuffixLogSumExp(ranking, scores);

  // Item at rank j is a candidate in choice stages 0..min(j, n-2); its
  // derivative is sum over those stages of its softmax weight, minus one if
  // it was the chosen item of stage j. The stage sums are carried as a
  // prefix log-sum-exp of -suffix[i].
  double nll = 0.0;
  double prefix = -std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j < n; ++j) {
    const double w = scores[ranking[j]];
    const bool chosen = j + 1 < n;
    if (chosen) {
      prefix = LogAddExp(prefix, -suffix[j]);
      nll += suffix[j] - w;
    }
    gradient[ranking[j]] = std::exp(w + prefix) - (chosen ? 1.0 : 0.0);
  }
  return std::max(nll, 0.0);
}

std::vector<double> PlNllGradient(const Ranking& ranking,
                                  const ScoreVector& scores) {
  std::vector<double> gradient(scores.size());
  PlNllAndGradient(ranking, scores, gradient);
  return gradient;
}

Ranking PlSampleSubset(const ScoreVector& scores,
                       std::span<const std::size_t> items, Rng& rng) {
  std::extreme_value_distribution<double> gumbel(0.0, 1.0);
  std::vector<std::pair<double, std::size_t>> keyed;
  keyed.reserve(items.size());
  for (std::size_t idx : items) {
    if (idx >= scores.size()) throw DomainError("sample item index out of range");
    keyed.emplace_back(scores[idx] + gumbel(rng), idx);
  }
  std::sort(keyed.begin(), keyed.end(), [](const auto& a, const auto& b) {
    return a.first > b.first || (a.first == b.first && a.second < b.second);
  });
  std::vector<std::size_t> order;
  order.reserve(keyed.size());
  for (const auto& [key, idx] : keyed) order.push_back(idx);
  return Ranking(std::move(order));
}

Ranking PlSample(const ScoreVector& scores, std::size_t n, Rng& rng) {
  if (n == 0 || n > scores.size()) {
    throw DomainError("sample size " + std::to_string(n) +
                      " must be in [1, " + std::to_string(scores.size()) + "]");
  }
  std::vector<std::size_t> all(scores.size());
  std::iota(all.begin(), all.end(), std::size_t{0});
  if (n == scores.size()) return PlSampleSubset(scores, all, rng);
  std::vector<std::size_t> chosen;
  chosen.reserve(n);
  std::sample(all.begin(), all.end(), std::back_inserter(chosen), n, rng);
  return PlSampleSubset(scores, chosen, rng);
}

Ranking PlMode(const ScoreVector& scores) {
  std::vector<std::size_t> order(scores.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) {
                     return scores[a] > scores[b];
                   });
  return Ranking(std::move(order));
}

std::vector<std::pair<Ranking, double>> PlEnumerate(const ScoreVector& scores) {
  if (scores.size() > kMaxEnumerationSize) {
    throw CapacityError("enumeration limited to " +
                        std::to_string(kMaxEnumerationSize) + " items, got " +
                        std::to_string(scores.size()));
  }
  std::vector<std::size_t> perm(scores.size());
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  std::vector<std::pair<Ranking, double>> table;
  if (perm.size() == 1) {
    table.emplace_back(Ranking(perm), 1.0);
    return table;
  }
  do {
    Ranking r(perm);
    const double p = std::exp(PlLogProbability(r, scores));
    table.emplace_back(std::move(r), p);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return table;
}

}  // namespace plrank

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


// Randomized invariants across modules. Each property is checked on many
// seeded instances.

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <vector>

#include "plrank/eval_metrics.h"
#include "plrank/metric_recovery.h"
#include "plrank/pl_core.h"
#include "plrank/ranking_sampler.h"
#include "plrank/scene.h"
#include "testing/test_util.h"

namespace plrank {
namespace {

class SeededProperty : public ::testing::TestWithParam<std::uint64_t> {
 protected:
  Rng rng_{GetParam()};
};

INSTANTIATE_TEST_SUITE_P(Seeds, SeededProperty, ::testing::Range<std::uint64_t>(0, 25));

Ranking RandomRanking(std::size_t k, std::size_t n, Rng& rng) {
  std::vector<std::size_t> order(k);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::shuffle(order.begin(), order.end(), rng);
  order.resize(n);
  return Ranking(order);
}

TEST_P(SeededProperty, LogProbabilityIsNonPositiveAndGradientBalanced) {
  const std::size_t k = 2 + rng_() % 10;
  const ScoreVector w(testing::UniformVector(k, -20.0, 20.0, rng_));
  const Ranking r = RandomRanking(k, 2 + rng_() % (k - 1), rng_);
  EXPECT_LE(PlLogProbability(r, w), 0.0);
  const auto g = PlNllGradient(r, w);
  EXPECT_NEAR(std::accumulate(g.begin(), g.end(), 0.0), 0.0, 1e-12);
  // The top item's derivative is never positive, the bottom one's never
  // negative.
  EXPECT_LE(g[r[0]], 0.0);
  EXPECT_GE(g[r[r.size() - 1]], 0.0);
}

TEST_P(SeededProperty, ReversingTwoItemsFlipsOdds) {
  const ScoreVector w(testing::UniformVector(2, -5.0, 5.0, rng_));
  const double a = PlLogProbability(Ranking({0, 1}), w);
  const double b = PlLogProbability(Ranking({1, 0}), w);
  EXPECT_NEAR(a - b, w[0] - w[1], 1e-12);
  EXPECT_NEAR(std::exp(a) + std::exp(b), 1.0, 1e-12);
}

TEST_P(SeededProperty, SamplesArePermutationsOfDistinctItems) {
  const std::size_t k = 2 + rng_() % 30;
  const ScoreVector w(testing::UniformVector(k, -3.0, 3.0, rng_));
  const std::size_t n = 1 + rng_() % k;
  const Ranking r = PlSample(w, n, rng_);
  ASSERT_EQ(r.size(), n);
  std::set<std::size_t> seen(r.order().begin(), r.order().end());
  EXPECT_EQ(seen.size(), n);
  EXPECT_LT(*seen.rbegin(), k);
}

TEST_P(SeededProperty, AffineResidualIsOrthogonalToRegressors) {
  const std::size_t n = 3 + rng_() % 50;
  const auto p = testing::UniformVector(n, -10.0, 10.0, rng_);
  const auto y = testing::UniformVector(n, 0.0, 10.0, rng_);
  const AffineFit fit = FitAffine(p, y);
  double dot_one = 0.0;
  double dot_p = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double res = y[i] - (fit.scale * p[i] + fit.shift);
    dot_one += res;
    dot_p += res * p[i];
  }
  EXPECT_NEAR(dot_one, 0.0, 1e-8);
  EXPECT_NEAR(dot_p, 0.0, 1e-7);
}

TEST_P(SeededProperty, OrdinalErrorComplementsUnderInversion) {
  const DepthMap truth = GenerateScene(
      {SceneKind::kRandomSmooth, 16 + static_cast<int>(rng_() % 16), 24, 0.5, 5.0, GetParam()});
  Grid pred(truth.height(), truth.width());
  for (double& v : pred.values()) v = std::uniform_real_distribution<double>(0, 1)(rng_);
  const auto pairs = SampleEvalPairs(truth, 2000, rng_);
  const double e = OrdinalError({pred, Orientation::kLowerIsCloser}, truth, pairs);
  const double inv = OrdinalError({pred, Orientation::kHigherIsCloser}, truth, pairs);
  EXPECT_GE(e, 0.0);
  EXPECT_LE(e, 1.0);
  EXPECT_NEAR(e + inv, 1.0, 1e-12);
  const auto sets = SampleEvalRankingSets(truth, 5, 20, rng_);
  const double ndcg = Ndcg({pred, Orientation::kLowerIsCloser}, truth, sets);
  EXPECT_GT(ndcg, 0.0);
  EXPECT_LE(ndcg, 1.0 + 1e-12);
}

TEST_P(SeededProperty, SelectedRankingsAreTheMostInformative) {
  const DepthMap map = GenerateScene(
      {static_cast<SceneKind>(GetParam() % 5), 12, 12, 0.2, 6.0, GetParam()});
  SamplerConfig cfg;
  cfg.rankings_per_image = 20;
  Rng copy = rng_;
  const auto candidates = DrawCandidateSets(map, cfg, copy);
  const auto picked = SampleRankings(map, cfg, rng_);
  double worst_kept = picked.front().informativeness;
  for (const auto& s : picked) worst_kept = std::min(worst_kept, s.informativeness);
  std::size_t better = 0;
  for (const auto& c : candidates) {
    better += ScoreCandidate(c, map, cfg).informativeness > worst_kept;
  }
  EXPECT_LT(better, picked.size());
  for (std::size_t i = 1; i < picked.size(); ++i) {
    EXPECT_GE(picked[i - 1].informativeness, picked[i].informativeness);
  }
}

}  // namespace
}  // namespace plrank

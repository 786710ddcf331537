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


#include "plrank/ranking_sampler.h"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <vector>

#include "plrank/errors.h"
#include "plrank/scene.h"
#include "testing/test_util.h"

namespace plrank {
namespace {

// Rescoring oracle: closest-first order and penalized adjacent-gap sum,
// computed from scratch for one candidate set.
struct OracleScore {
  std::vector<std::size_t> order;
  double informativeness;
};

OracleScore Rescore(const std::vector<Location>& locs, const DepthMap& map,
                    double tau, double penalty) {
  std::vector<std::pair<double, std::size_t>> keyed;
  for (std::size_t i = 0; i < locs.size(); ++i) {
    keyed.push_back({map.depth(locs[i]), map.Index(locs[i]) * 1000 + i});
  }
  std::sort(keyed.begin(), keyed.end());
  OracleScore out{{}, 0.0};
  for (const auto& [d, key] : keyed) out.order.push_back(key % 1000);
  for (std::size_t i = 1; i < keyed.size(); ++i) {
    const double lo = keyed[i - 1].first;
    const double hi = keyed[i].first;
    out.informativeness += hi - lo;
    const bool both_zero = lo == 0.0 && hi == 0.0;
    const bool near = both_zero || (lo > 0.0 && std::max(hi / lo, lo / hi) < 1.0 + tau);
    if (near) out.informativeness += penalty;
  }
  return out;
}

DepthMap RandomScene(std::uint64_t seed) {
  Rng rng(seed);
  std::uniform_int_distribution<int> size(6, 24);
  SceneSpec spec;
  spec.kind = static_cast<SceneKind>(seed % 5);
  spec.height = size(rng);
  spec.width = size(rng);
  spec.depth_min = std::uniform_real_distribution<double>(0.0, 2.0)(rng);
  spec.depth_max = spec.depth_min + std::uniform_real_distribution<double>(0.5, 20.0)(rng);
  spec.seed = seed;
  return GenerateScene(spec);
}

TEST(NearEqualDepthsTest, HandCases) {
  EXPECT_TRUE(NearEqualDepths(1.0, 1.01, 0.03));
  EXPECT_TRUE(NearEqualDepths(1.01, 1.0, 0.03));
  EXPECT_FALSE(NearEqualDepths(1.0, 1.05, 0.03));
  EXPECT_FALSE(NearEqualDepths(2.0, 1.0, 0.03));
  EXPECT_TRUE(NearEqualDepths(0.0, 0.0, 0.03));
  EXPECT_FALSE(NearEqualDepths(0.0, 0.001, 0.03));
  EXPECT_FALSE(NearEqualDepths(3.0, 3.0, 0.0));
}

TEST(ScoreCandidateTest, NearEqualPairIsPenalized) {
  const DepthMap map(1, 3, {1.01f, 1.0f, 2.0f});
  SamplerConfig cfg;
  const std::vector<Location> pair = {{0, 0}, {0, 1}};
  const CandidateScore s = ScoreCandidate(pair, map, cfg);
  EXPECT_NEAR(s.informativeness, -9.99, 1e-6);
  EXPECT_EQ(s.ground_truth, Ranking({1, 0}));

  const std::vector<Location> far = {{0, 2}, {0, 1}};
  EXPECT_NEAR(ScoreCandidate(far, map, cfg).informativeness, 1.0, 1e-12);

  SamplerConfig off = cfg;
  off.tau = 0.0;
  EXPECT_NEAR(ScoreCandidate(pair, map, off).informativeness, 0.01, 1e-6);
}

TEST(ScoreCandidateTest, PenaltyCountsEveryAdjacentNearEqualPair) {
  const DepthMap map(1, 4, {5.0f, 1.0f, 1.01f, 5.05f});
  SamplerConfig cfg;
  const std::vector<Location> all = {{0, 0}, {0, 1}, {0, 2}, {0, 3}};
  const CandidateScore s = ScoreCandidate(all, map, cfg);
  EXPECT_EQ(s.ground_truth, Ranking({1, 2, 0, 3}));
  EXPECT_NEAR(s.informativeness, 4.05 - 20.0, 1e-5);
}

TEST(ScoreCandidateTest, TiesBreakByPixelIndex) {
  const DepthMap map(2, 2, {3.0f, 3.0f, 3.0f, 1.0f});
  const std::vector<Location> locs = {{1, 0}, {0, 1}, {1, 1}};
  EXPECT_EQ(ScoreCandidate(locs, map, SamplerConfig{}).ground_truth, Ranking({2, 1, 0}));
}

TEST(ScoreCandidateTest, RejectsBadSets) {
  const DepthMap map(1, 3, {1.f, 2.f, 3.f}, {1, 1, 0});
  const SamplerConfig cfg;
  const std::vector<Location> one = {{0, 0}};
  const std::vector<Location> dup = {{0, 0}, {0, 0}};
  const std::vector<Location> masked = {{0, 0}, {0, 2}};
  EXPECT_THROW(ScoreCandidate(one, map, cfg), DomainError);
  EXPECT_THROW(ScoreCandidate(dup, map, cfg), DomainError);
  EXPECT_THROW(ScoreCandidate(masked, map, cfg), DomainError);
}

TEST(SamplerConfigTest, Validation) {
  SamplerConfig cfg;
  EXPECT_NO_THROW(cfg.Validate());
  for (auto mutate : std::vector<void (*)(SamplerConfig&)>{
           [](SamplerConfig& c) { c.ranking_size = 1; },
           [](SamplerConfig& c) { c.rankings_per_image = 0; },
           [](SamplerConfig& c) { c.oversample_factor = 1; },
           [](SamplerConfig& c) { c.tau = -0.1; }}) {
    SamplerConfig bad = cfg;
    mutate(bad);
    EXPECT_THROW(bad.Validate(), DomainError);
  }
}

TEST(SampleRankingsTest, TopSelectionMatchesRescoringOracle) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const DepthMap map = RandomScene(seed);
    SamplerConfig cfg;
    cfg.rankings_per_image = 40;
    Rng stream(seed);
    const auto candidates = DrawCandidateSets(map, cfg, stream);
    ASSERT_EQ(candidates.size(), 200u);

    std::vector<OracleScore> scores;
    for (const auto& c : candidates) scores.push_back(Rescore(c, map, cfg.tau, cfg.penalty));
    std::vector<std::size_t> idx(candidates.size());
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
      return scores[a].informativeness > scores[b].informativeness;
    });

    Rng rng(seed);
    const auto picked = SampleRankings(map, cfg, rng);
    ASSERT_EQ(picked.size(), 40u);
    for (std::size_t k = 0; k < picked.size(); ++k) {
      const std::size_t i = idx[k];
      EXPECT_EQ(picked[k].locations, candidates[i]);
      EXPECT_EQ(picked[k].ground_truth, Ranking(scores[i].order));
      EXPECT_NEAR(picked[k].informativeness, scores[i].informativeness, 1e-9);
    }
  }
}

TEST(SampleRankingsTest, SamplesAreValidDistinctAndClosestFirst) {
  const DepthMap map = GenerateScene({SceneKind::kSteps, 16, 32, 1.0, 9.0, 3});
  SamplerConfig cfg;
  cfg.rankings_per_image = 100;
  Rng rng(1);
  for (const RankingSample& s : SampleRankings(map, cfg, rng)) {
    ASSERT_EQ(s.locations.size(), 5u);
    std::set<Location> unique(s.locations.begin(), s.locations.end());
    EXPECT_EQ(unique.size(), 5u);
    const auto ordered = s.OrderedLocations();
    for (std::size_t i = 0; i < ordered.size(); ++i) {
      EXPECT_TRUE(map.valid(ordered[i]));
      if (i > 0) EXPECT_LE(map.depth(ordered[i - 1]), map.depth(ordered[i]));
    }
  }
}

TEST(SampleRankingsTest, DeterministicAcrossThreadCounts) {
  const DepthMap map = GenerateScene({SceneKind::kRandomSmooth, 32, 32, 0.5, 8.0, 9});
  SamplerConfig one;
  SamplerConfig four = one;
  four.num_threads = 4;
  Rng a(5);
  Rng b(5);
  const auto x = SampleRankings(map, one, a);
  const auto y = SampleRankings(map, four, b);
  ASSERT_EQ(x.size(), y.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    EXPECT_EQ(x[i].locations, y[i].locations);
    EXPECT_EQ(x[i].informativeness, y[i].informativeness);
  }
}

TEST(SampleRankingsTest, TooFewValidPixels) {
  const DepthMap map(2, 2, {1.f, 2.f, 3.f, 4.f}, {1, 0, 0, 1});
  SamplerConfig cfg;
  cfg.ranking_size = 3;
  Rng rng(0);
  EXPECT_THROW(SampleRankings(map, cfg, rng), CapacityError);
  cfg.ranking_size = 2;
  EXPECT_EQ(SampleRankings(map, cfg, rng).size(), 400u);
}

TEST(RankingsFileTest, FormatParseRoundTrip) {
  const DepthMap map = GenerateScene({SceneKind::kRadialBowl, 10, 10, 0.0, 3.0, 0});
  SamplerConfig cfg;
  cfg.rankings_per_image = 20;
  Rng rng(8);
  for (const RankingSample& s : SampleRankings(map, cfg, rng)) {
    const RankingSample back = ParseRankingSample(FormatRankingSample(s));
    EXPECT_EQ(back.locations, s.OrderedLocations());
    EXPECT_EQ(back.ground_truth, Ranking::Identity(5));
    EXPECT_EQ(back.informativeness, s.informativeness);
  }
  EXPECT_THROW(ParseRankingSample("1,2;3,4"), FormatError);
  EXPECT_THROW(ParseRankingSample("1,2 | 0"), FormatError);
  EXPECT_THROW(ParseRankingSample("1,2;1,2 | 0"), FormatError);
  EXPECT_THROW(ParseRankingSample("1;2,3 | 0"), FormatError);
}

TEST(RankingsFileTest, EpochBlocksRoundTrip) {
  testing::ScratchDir dir;
  const DepthMap map = GenerateScene({SceneKind::kRampVertical, 12, 12, 1.0, 2.0, 0});
  SamplerConfig cfg;
  cfg.rankings_per_image = 7;
  Rng rng(2);
  for (std::size_t blocks : {1u, 3u}) {
    std::vector<std::vector<RankingSample>> epochs;
    for (std::size_t e = 0; e < blocks; ++e) epochs.push_back(SampleRankings(map, cfg, rng));
    const std::string path = dir.File("r.txt");
    WriteRankingsFile(path, epochs);
    const auto back = ReadRankingsFile(path);
    ASSERT_EQ(back.size(), blocks);
    for (std::size_t e = 0; e < blocks; ++e) {
      ASSERT_EQ(back[e].size(), 7u);
      for (std::size_t i = 0; i < 7; ++i) {
        EXPECT_EQ(back[e][i].locations, epochs[e][i].OrderedLocations());
      }
    }
  }
}

}  // namespace
}  // namespace plrank

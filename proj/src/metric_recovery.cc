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

#include "plrank/metric_recovery.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

#include "plrank/errors.h"
#include "plrank/scorer.h"

namespace plrank {
namespace {

bool AllReachable(const std::vector<std::vector<std::size_t>>& adj) {
  std::vector<bool> seen(adj.size(), false);
  std::vector<std::size_t> stack = {0};
  seen[0] = true;
  std::size_t count = 1;
  while (!stack.empty()) {
    const std::size_t u = stack.back();
    stack.pop_back();
    for (std::size_t v : adj[u]) {
      if (!seen[v]) {
        seen[v] = true;
        ++count;
        stack.push_back(v);
      }
    }
  }
  return count == adj.size();
}

}  // namespace

std::vector<double> ApplyAffine(std::span<const double> scores, const AffineFit& fit) {
  std::vector<double> out(scores.size());
  for (std::size_t i = 0; i < scores.size(); ++i) {
    out[i] = fit.scale * scores[i] + fit.shift;
  }
  return out;
}

Grid ApplyAffine(const Grid& scores, const AffineFit& fit) {
  return Grid(scores.height(), scores.width(), ApplyAffine(scores.values(), fit));
}

std::vector<double> RecoverDepth(const ScoreVector& scores, const AffineFit& fit) {
  std::vector<double> out = ApplyAffine(scores.values(), fit);
  for (double& v : out) v = std::max(v, kRecoveredDepthFloor);
  return out;
}

Grid RecoverDepth(const Grid& scores, const AffineFit& fit) {
  Grid out = ApplyAffine(scores, fit);
  for (double& v : out.values()) v = std::max(v, kRecoveredDepthFloor);
  return out;
}

AffineFit FitAffine(std::span<const double> predicted, std::span<const double> truth) {
  if (predicted.size() != truth.size()) {
    throw DomainError("prediction and truth lengths differ");
  }
  const std::size_t n = predicted.size();
  if (n < 2) throw DegenerateFitError("affine fit needs at least 2 points");
  double mean_p = 0.0;
  double mean_t = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mean_p += predicted[i];
    mean_t += truth[i];
  }
  mean_p /= n;
  mean_t /= n;
  // Normal equations in centred coordinates:
  //   [sum p'^2  0] [s]   [sum p' t']
  //   [0         n] [t'] = [0       ]
  double spp = 0.0;
  double spt = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double dp = predicted[i] - mean_p;
    spp += dp * dp;
    spt += dp * (truth[i] - mean_t);
  }
  if (!(spp > 0.0)) {
    throw DegenerateFitError("constant predictions: normal matrix is singular");
  }
  const double s = spt / spp;
  return {s, mean_t - s * mean_p};
}

AffineFit FitAffine(const Grid& predicted, const DepthMap& truth) {
  if (predicted.height() != truth.height() || predicted.width() != truth.width()) {
    throw DomainError("prediction and truth grids differ in shape");
  }
  std::vector<double> p;
  std::vector<double> t;
  for (std::size_t i : truth.ValidIndices()) {
    p.push_back(predicted.values()[i]);
    t.push_back(truth.values()[i]);
  }
  return FitAffine(p, t);
}

double SquaredResidual(std::span<const double> predicted,
                       std::span<const double> truth, const AffineFit& fit) {
  double sum = 0.0;
  for (std::size_t i = 0; i < predicted.size(); ++i) {
    const double r = fit.scale * predicted[i] + fit.shift - truth[i];
    sum += r * r;
  }
  return sum;
}

bool HasFiniteMle(std::span<const Ranking> rankings, std::size_t n) {
  if (n < 2) return false;
  std::vector<std::vector<std::size_t>> fwd(n);
  std::vector<std::vector<std::size_t>> rev(n);
  for (const Ranking& r : rankings) {
    for (std::size_t k = 0; k + 1 < r.size(); ++k) {
      if (r[k] >= n || r[k + 1] >= n) throw DomainError("ranking index out of range");
      fwd[r[k]].push_back(r[k + 1]);
      rev[r[k + 1]].push_back(r[k]);
    }
  }
  return AllReachable(fwd) && AllReachable(rev);
}

RecoveryResult RumRecoveryExperiment(const LatentUtilities& u,
                                     std::size_t num_rankings,
                                     const TrainConfig& cfg, Rng& rng) {
  if (u.noise_kind() != NoiseKind::kGumbel) {
    throw DomainError("metric recovery requires Gumbel noise");
  }
  const std::size_t n = u.size();
  const std::vector<Ranking> rankings = RumDataset(u, num_rankings, rng);

  std::map<Ranking, double> counts;
  for (const Ranking& r : rankings) counts[r] += 1.0;
  std::vector<Location> items(n);
  for (std::size_t i = 0; i < n; ++i) items[i] = {0, static_cast<int>(i)};
  std::vector<RankingSample> samples;
  samples.reserve(counts.size());
  for (const auto& [ranking, count] : counts) {
    samples.push_back({items, ranking, 0.0, count});
  }

  TrainConfig train_cfg = cfg;
  if (std::isinf(train_cfg.stop_spread)) train_cfg.stop_spread = kNonIdentifiableSpread;
  TrainResult<TabularScorer> trained =
      Train(TabularScorer(1, static_cast<int>(n)),
            std::span<const RankingSample>(samples), train_cfg);

  RecoveryResult result;
  const auto params = trained.scorer.parameters();
  result.scores.assign(params.begin(), params.end());
  result.epochs_run = trained.epochs_run;
  result.identifiable = HasFiniteMle(rankings, n) && !trained.stopped_on_spread;
  if (!result.identifiable) {
    result.rmse = std::numeric_limits<double>::quiet_NaN();
    return result;
  }
  result.fit = FitAffine(result.scores, u.z());
  result.recovered = ApplyAffine(result.scores, result.fit);
  double sq = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double d = result.recovered[i] - u.z()[i];
    sq += d * d;
  }
  result.rmse = std::sqrt(sq / n);
  return result;
}

}  // namespace plrank

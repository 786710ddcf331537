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

// Metric depth from learned log-domain scores: z_hat = s * w + t, with (s, t)
// fitted per map by least squares. The scale is unconstrained; a negative s
// maps "higher score = closer" onto "lower depth = closer".

#ifndef PLRANK_METRIC_RECOVERY_H_
#define PLRANK_METRIC_RECOVERY_H_

#include <cstddef>
#include <span>
#include <vector>

#include "plrank/depth_map.h"
#include "plrank/pl_core.h"
#include "plrank/random.h"
#include "plrank/rum_sim.h"
#include "plrank/trainer.h"

namespace plrank {

struct AffineFit {
  double scale = 1.0;
  double shift = 0.0;
};

// Floor applied to recovered depth so ratio metrics stay defined.
inline constexpr double kRecoveredDepthFloor = 1e-6;

// s * w + t elementwise, no clamping.
std::vector<double> ApplyAffine(std::span<const double> scores, const AffineFit& fit);
Grid ApplyAffine(const Grid& scores, const AffineFit& fit);

// ApplyAffine followed by max(., kRecoveredDepthFloor).
std::vector<double> RecoverDepth(const ScoreVector& scores, const AffineFit& fit);
Grid RecoverDepth(const Grid& scores, const AffineFit& fit);

// argmin_{s,t} sum_i (s * predicted_i + t - truth_i)^2 in closed form. Throws
// DegenerateFitError when fewer than 2 points are given or all predictions
// are equal.
AffineFit FitAffine(std::span<const double> predicted, std::span<const double> truth);
// Same, over the valid pixels of `truth`.
AffineFit FitAffine(const Grid& predicted, const DepthMap& truth);

double SquaredResidual(std::span<const double> predicted,
                       std::span<const double> truth, const AffineFit& fit);

// True iff the PL maximum-likelihood estimate over n items exists: the
// "ranked above" graph of the observed rankings is strongly connected.
bool HasFiniteMle(std::span<const Ranking> rankings, std::size_t n);

struct RecoveryResult {
  std::vector<double> scores;     // learned w, one per item
  AffineFit fit;                  // fitted against the true z
  std::vector<double> recovered;  // s * w + t, unclamped
  double rmse = 0.0;              // RMS(recovered - z); NaN if not identifiable
  bool identifiable = true;
  int epochs_run = 0;
};

// Default stop spread for the recovery experiment when the config leaves it
// unbounded.
inline constexpr double kNonIdentifiableSpread = 50.0;

// Samples `num_rankings` Gumbel rankings of the items of `u`, fits a free PL
// score per item by NLL minimisation, aligns the scores to z by FitAffine and
// reports the RMSE. Duplicate rankings are merged into weighted samples.
// Results are flagged non-identifiable when the MLE does not exist or the
// score spread exceeds the stop spread. Throws DomainError for Gaussian noise
// or num_rankings == 0.
RecoveryResult RumRecoveryExperiment(const LatentUtilities& u,
                                     std::size_t num_rankings,
                                     const TrainConfig& cfg, Rng& rng);

}  // namespace plrank

#endif  // PLRANK_METRIC_RECOVERY_H_

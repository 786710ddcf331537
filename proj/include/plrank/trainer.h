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

// Maximum-likelihood training of pixel scorers: mini-batch descent on the
// mean PL negative log-likelihood of ranking samples.

#ifndef PLRANK_TRAINER_H_
#define PLRANK_TRAINER_H_

#include <cstdint>
#include <functional>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "plrank/ranking_sampler.h"
#include "plrank/scorer.h"

namespace plrank {

enum class OptimizerKind { kSgd, kAdam };

inline constexpr int kFullBatch = std::numeric_limits<int>::max();

struct TrainConfig {
  int epochs = 500;
  double learning_rate = 0.05;
  // Batches are min(batch_size, #samples) large; kFullBatch means one step
  // per epoch over all samples.
  int batch_size = kFullBatch;
  OptimizerKind optimizer = OptimizerKind::kAdam;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;
  std::uint64_t seed = 0;
  // Training halts once max(parameters) - min(parameters) exceeds this.
  double stop_spread = std::numeric_limits<double>::infinity();
  int num_threads = 1;

  // Throws DomainError for negative epochs, learning_rate < 0,
  // batch_size < 1 or non-positive stop_spread.
  void Validate() const;
};

// Weighted mean NLL over `samples` and its gradient with respect to the
// scorer's parameters.
struct Objective {
  double mean_nll = 0.0;
  std::vector<double> gradient;
};

template <PixelScorer S>
Objective EvaluateObjective(const S& scorer, std::span<const RankingSample> samples,
                            int num_threads = 1);

template <PixelScorer S>
struct TrainResult {
  S scorer;
  // nll_trace[0] is the mean NLL of the first epoch's samples before any
  // update; nll_trace[e] for e >= 1 is the mean NLL of the e-th epoch's
  // samples after that epoch's updates.
  std::vector<double> nll_trace;
  int epochs_run = 0;
  bool stopped_on_spread = false;
};

// Called once per epoch with the epoch index, returning that epoch's samples.
using EpochSamples = std::function<std::vector<RankingSample>(int epoch)>;

// Fixed training set. Throws DomainError on a sample with fewer than 2 items.
template <PixelScorer S>
TrainResult<S> Train(S scorer, std::span<const RankingSample> samples,
                     const TrainConfig& cfg);

// Fresh samples every epoch.
template <PixelScorer S>
TrainResult<S> Train(S scorer, const EpochSamples& epoch_samples,
                     const TrainConfig& cfg);

std::string FormatNllTraceCsv(std::span<const double> trace);

}  // namespace plrank

#endif  // PLRANK_TRAINER_H_

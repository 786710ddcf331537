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

#ifndef PLRANK_REPORT_H_
#define PLRANK_REPORT_H_

#include <cstddef>
#include <span>
#include <string>

#include "plrank/eval_metrics.h"
#include "plrank/metric_recovery.h"
#include "plrank/random.h"

namespace plrank {

struct EvalOptions {
  std::size_t pairs = kDefaultEvalPairs;
  std::size_t ranking_sets = kDefaultRankingSets;
  std::size_t ranking_size = kDefaultRankingSetSize;
  // <= 0 means "use the largest valid ground-truth depth".
  double max_capacity = 0.0;
  // Fit scale and shift of the prediction to the truth before RMSE / delta.
  // Required for score predictions.
  bool align = true;
};

struct EvalReport {
  std::string model;
  std::string dataset;
  double ordinal_error = 0.0;
  double ndcg = 0.0;
  double rmse = 0.0;
  double delta_gt_1_25 = 0.0;  // percent
  std::size_t pair_count = 0;  // pairs retained after dropping equal truth
  std::size_t ranking_count = 0;
  std::size_t delta_excluded = 0;  // valid pixels with zero truth depth
  AffineFit fit;
};

// Samples pairs then ranking sets from `rng` and evaluates all four metrics.
EvalReport Evaluate(const Prediction& pred, const DepthMap& truth,
                    const EvalOptions& options, Rng& rng);

// One CSV row per report with a header line.
std::string FormatReportsCsv(std::span<const EvalReport> reports);

// Aligned plain-text table: one row per model, one column group per dataset
// (ord, nDCG, RMSE, d>1.25).
std::string FormatReportsTable(std::span<const EvalReport> reports);

}  // namespace plrank

#endif  // PLRANK_REPORT_H_

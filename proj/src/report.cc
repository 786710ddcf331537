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

#include "plrank/report.h"

#include <algorithm>
#include <cstdio>
#include <map>
#include <vector>

#include "plrank/errors.h"

namespace plrank {
namespace {

std::string Fixed(double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", digits, v);
  return buf;
}

std::string Pad(const std::string& s, std::size_t width, bool left = false) {
  if (s.size() >= width) return s;
  const std::string fill(width - s.size(), ' ');
  return left ? s + fill : fill + s;
}

}  // namespace

EvalReport Evaluate(const Prediction& pred, const DepthMap& truth,
                    const EvalOptions& options, Rng& rng) {
  if (!options.align && pred.orientation == Orientation::kHigherIsCloser) {
    throw DomainError("score predictions must be aligned before metric evaluation");
  }
  EvalReport report;
  const auto pairs = SampleEvalPairs(truth, options.pairs, rng);
  report.ordinal_error = OrdinalError(pred, truth, pairs, &report.pair_count);
  const auto sets =
      SampleEvalRankingSets(truth, options.ranking_sets, options.ranking_size, rng);
  report.ndcg = Ndcg(pred, truth, sets);
  report.ranking_count = sets.size();

  Grid metric;
  if (options.align) {
    report.fit = FitAffine(pred.values, truth);
    metric = RecoverDepth(pred.values, report.fit);
  } else {
    metric = pred.values;
  }
  const double capacity =
      options.max_capacity > 0.0 ? options.max_capacity : truth.MaxValidDepth();
  report.rmse = Rmse(metric, truth, capacity);
  report.delta_gt_1_25 = DeltaMetric(metric, truth, &report.delta_excluded);
  return report;
}

std::string FormatReportsCsv(std::span<const EvalReport> reports) {
  std::string out =
      "model,dataset,ordinal_error,ndcg,rmse,delta_gt_1_25,pair_count,"
      "ranking_count,delta_excluded,fit_scale,fit_shift\n";
  char buf[512];
  for (const EvalReport& r : reports) {
    std::snprintf(buf, sizeof(buf), "%s,%s,%.6f,%.6f,%.6f,%.4f,%zu,%zu,%zu,%.9g,%.9g\n",
                  r.model.c_str(), r.dataset.c_str(), r.ordinal_error, r.ndcg,
                  r.rmse, r.delta_gt_1_25, r.pair_count, r.ranking_count,
                  r.delta_excluded, r.fit.scale, r.fit.shift);
    out += buf;
  }
  return out;
}

std::string FormatReportsTable(std::span<const EvalReport> reports) {
  std::vector<std::string> models;
  std::vector<std::string> datasets;
  std::map<std::pair<std::string, std::string>, const EvalReport*> cell;
  for (const EvalReport& r : reports) {
    if (std::find(models.begin(), models.end(), r.model) == models.end()) {
      models.push_back(r.model);
    }
    if (std::find(datasets.begin(), datasets.end(), r.dataset) == datasets.end()) {
      datasets.push_back(r.dataset);
    }
    cell[{r.model, r.dataset}] = &r;
  }

  static const char* kMetrics[] = {"ord", "nDCG", "RMSE", "d>1.25"};
  constexpr std::size_t kCol = 9;
  std::size_t name_width = 5;
  for (const auto& m : models) name_width = std::max(name_width, m.size());

  std::string head1 = Pad("", name_width, true) + " |";
  std::string head2 = Pad("Model", name_width, true) + " |";
  for (const auto& d : datasets) {
    const std::size_t group = 4 * (kCol + 1);
    std::string title = d.size() > group - 1 ? d.substr(0, group - 1) : d;
    head1 += " " + Pad(title, group - 1, true) + " |";
    for (const char* m : kMetrics) head2 += " " + Pad(m, kCol);
    head2 += " |";
  }
  std::string rule(head2.size(), '-');
  std::string out = head1 + "\n" + head2 + "\n" + rule + "\n";
  for (const auto& m : models) {
    std::string line = Pad(m, name_width, true) + " |";
    for (const auto& d : datasets) {
      auto it = cell.find({m, d});
      if (it == cell.end()) {
        for (int k = 0; k < 4; ++k) line += " " + Pad("-", kCol);
      } else {
        const EvalReport& r = *it->second;
        line += " " + Pad(Fixed(r.ordinal_error, 3), kCol);
        line += " " + Pad(Fixed(r.ndcg, 3), kCol);
        line += " " + Pad(Fixed(r.rmse, 3), kCol);
        line += " " + Pad(Fixed(r.delta_gt_1_25, 2), kCol);
      }
      line += " |";
    }
    out += line + "\n";
  }
  return out;
}

}  // namespace plrank

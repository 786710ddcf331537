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

#include "plrank/trainer.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numeric>

#include "plrank/errors.h"
#include "plrank/parallel.h"
#include "plrank/random.h"

namespace plrank {
namespace {

void CheckSamples(std::span<const RankingSample> samples) {
  for (const RankingSample& s : samples) {
    if (s.ground_truth.size() < 2 || s.locations.size() < 2) {
      throw DomainError("training sample ranks fewer than 2 items");
    }
    if (!(s.weight > 0.0) || !std::isfinite(s.weight)) {
      throw DomainError("training sample weight must be positive");
    }
  }
}

class Optimizer {
 public:
  Optimizer(const TrainConfig& cfg, std::size_t num_params)
      : cfg_(cfg), m_(num_params, 0.0), v_(num_params, 0.0) {}

  void Step(std::span<double> params, std::span<const double> grad) {
    if (cfg_.optimizer == OptimizerKind::kSgd) {
      for (std::size_t i = 0; i < params.size(); ++i) {
        params[i] -= cfg_.learning_rate * grad[i];
      }
      return;
    }
    ++t_;
    const double c1 = 1.0 - std::pow(cfg_.beta1, t_);
    const double c2 = 1.0 - std::pow(cfg_.beta2, t_);
    for (std::size_t i = 0; i < params.size(); ++i) {
      m_[i] = cfg_.beta1 * m_[i] + (1.0 - cfg_.beta1) * grad[i];
      v_[i] = cfg_.beta2 * v_[i] + (1.0 - cfg_.beta2) * grad[i] * grad[i];
      params[i] -= cfg_.learning_rate * (m_[i] / c1) /
                   (std::sqrt(v_[i] / c2) + cfg_.epsilon);
    }
  }

 private:
  const TrainConfig& cfg_;
  std::vector<double> m_;
  std::vector<double> v_;
  long t_ = 0;
};

double Spread(std::span<const double> params) {
  const auto [mn, mx] = std::minmax_element(params.begin(), params.end());
  return *mx - *mn;
}

// Yields the samples of each epoch; `fixed` means every epoch returns the same
// samples, which lets full-batch training reuse the post-step objective.
using SampleSource = std::function<std::span<const RankingSample>(int epoch)>;

template <PixelScorer S>
TrainResult<S> TrainImpl(S scorer, const SampleSource& source, bool fixed,
                         const TrainConfig& cfg) {
  cfg.Validate();
  TrainResult<S> result{std::move(scorer), {}, 0, false};
  S& model = result.scorer;
  Optimizer opt(cfg, model.parameters().size());
  Rng rng(cfg.seed);

  auto fetch = [&](int epoch) {
    std::span<const RankingSample> s = source(epoch);
    CheckSamples(s);
    if (s.empty()) throw DomainError("no training samples");
    return s;
  };

  std::span<const RankingSample> samples = fetch(0);
  Objective current = EvaluateObjective(model, samples, cfg.num_threads);
  result.nll_trace.push_back(current.mean_nll);

  std::vector<std::size_t> order;
  std::vector<RankingSample> batch;
  for (int epoch = 0; epoch < cfg.epochs; ++epoch) {
    const bool have_current = epoch == 0 || fixed;
    if (epoch > 0 && !fixed) samples = fetch(epoch);
    const std::size_t batch_size =
        std::min<std::size_t>(samples.size(), static_cast<std::size_t>(cfg.batch_size));

    if (batch_size == samples.size()) {
      if (!have_current) current = EvaluateObjective(model, samples, cfg.num_threads);
      opt.Step(model.parameters(), current.gradient);
    } else {
      order.resize(samples.size());
      std::iota(order.begin(), order.end(), std::size_t{0});
      std::shuffle(order.begin(), order.end(), rng);
      for (std::size_t begin = 0; begin < samples.size(); begin += batch_size) {
        const std::size_t end = std::min(samples.size(), begin + batch_size);
        batch.clear();
        for (std::size_t k = begin; k < end; ++k) batch.push_back(samples[order[k]]);
        const Objective obj = EvaluateObjective(
            model, std::span<const RankingSample>(batch), cfg.num_threads);
        opt.Step(model.parameters(), obj.gradient);
      }
    }

    current = EvaluateObjective(model, samples, cfg.num_threads);
    result.nll_trace.push_back(current.mean_nll);
    result.epochs_run = epoch + 1;
    if (Spread(model.parameters()) > cfg.stop_spread) {
      result.stopped_on_spread = true;
      break;
    }
  }
  return result;
}

}  // namespace

void TrainConfig::Validate() const {
  if (epochs < 0) throw DomainError("epochs must be >= 0");
  if (!(learning_rate >= 0.0) || !std::isfinite(learning_rate)) {
    throw DomainError("learning rate must be finite and >= 0");
  }
  if (batch_size < 1) throw DomainError("batch size must be >= 1");
  if (!(stop_spread > 0.0)) throw DomainError("stop spread must be positive");
  if (!(beta1 >= 0.0 && beta1 < 1.0 && beta2 >= 0.0 && beta2 < 1.0 && epsilon > 0.0)) {
    throw DomainError("invalid Adam constants");
  }
}

template <PixelScorer S>
Objective EvaluateObjective(const S& scorer, std::span<const RankingSample> samples,
                            int num_threads) {
  CheckSamples(samples);
  Objective obj;
  obj.gradient.assign(scorer.parameters().size(), 0.0);
  if (samples.empty()) return obj;

  struct PerSample {
    double nll = 0.0;
    std::vector<double> score_grad;
  };
  std::vector<PerSample> per(samples.size());
  ParallelFor(samples.size(), num_threads, [&](std::size_t i) {
    const RankingSample& s = samples[i];
    const ScoreVector scores = scorer.Forward(s.locations);
    per[i].score_grad.resize(scores.size());
    per[i].nll = PlNllAndGradient(s.ground_truth, scores, per[i].score_grad);
  });

  // Sequential reduction in sample order keeps results independent of the
  // thread count.
  double total_weight = 0.0;
  for (const RankingSample& s : samples) total_weight += s.weight;
  const double inv = 1.0 / total_weight;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const double w = samples[i].weight * inv;
    obj.mean_nll += w * per[i].nll;
    for (double& g : per[i].score_grad) g *= w;
    scorer.AccumulateGradient(samples[i].locations, per[i].score_grad, obj.gradient);
  }
  return obj;
}

template <PixelScorer S>
TrainResult<S> Train(S scorer, std::span<const RankingSample> samples,
                     const TrainConfig& cfg) {
  return TrainImpl(
      std::move(scorer), [samples](int) { return samples; }, true, cfg);
}

template <PixelScorer S>
TrainResult<S> Train(S scorer, const EpochSamples& epoch_samples,
                     const TrainConfig& cfg) {
  std::vector<RankingSample> holder;
  return TrainImpl(
      std::move(scorer),
      [&](int epoch) -> std::span<const RankingSample> {
        holder = epoch_samples(epoch);
        return holder;
      },
      false, cfg);
}

std::string FormatNllTraceCsv(std::span<const double> trace) {
  std::string out = "epoch,mean_nll\n";
  char buf[64];
  for (std::size_t e = 0; e < trace.size(); ++e) {
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), trace[e]);
    out += std::to_string(e) + "," + std::string(buf, ptr) + "\n";
  }
  return out;
}

template Objective EvaluateObjective(const TabularScorer&,
                                     std::span<const RankingSample>, int);
template Objective EvaluateObjective(const LinearFeatureScorer&,
                                     std::span<const RankingSample>, int);
template TrainResult<TabularScorer> Train(TabularScorer,
                                          std::span<const RankingSample>,
                                          const TrainConfig&);
template TrainResult<LinearFeatureScorer> Train(LinearFeatureScorer,
                                                std::span<const RankingSample>,
                                                const TrainConfig&);
template TrainResult<TabularScorer> Train(TabularScorer, const EpochSamples&,
                                          const TrainConfig&);
template TrainResult<LinearFeatureScorer> Train(LinearFeatureScorer,
                                                const EpochSamples&,
                                                const TrainConfig&);

}  // namespace plrank

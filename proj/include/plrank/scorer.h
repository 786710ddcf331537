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

// Differentiable pixel scorers producing log-domain PL scores.
//
// TabularScorer keeps one free score per pixel (pure memorisation of a single
// image). LinearFeatureScorer shares four coefficients across pixels over the
// features (row / (H-1), col / (W-1), distance to the image centre divided by
// the centre-to-corner distance, 1).

#ifndef PLRANK_SCORER_H_
#define PLRANK_SCORER_H_

#include <array>
#include <concepts>
#include <span>
#include <string>

#include "plrank/depth_map.h"
#include "plrank/pfm_io.h"
#include "plrank/pl_core.h"

namespace plrank {

// Interface shared by the scorers consumed by Train().
template <typename S>
concept PixelScorer = requires(const S& cs, S& s, std::span<const Location> locs,
                               std::span<const double> score_grad,
                               std::span<double> param_grad) {
  { cs.Forward(locs) } -> std::same_as<ScoreVector>;
  // param_grad += J^T score_grad, J = d scores / d parameters.
  { cs.AccumulateGradient(locs, score_grad, param_grad) } -> std::same_as<void>;
  { s.parameters() } -> std::same_as<std::span<double>>;
  { cs.parameters() } -> std::same_as<std::span<const double>>;
  { cs.ScoreGrid() } -> std::same_as<Grid>;
};

class TabularScorer {
 public:
  // All-zero weights.
  TabularScorer(int height, int width);
  explicit TabularScorer(Grid weights);

  int height() const { return weights_.height(); }
  int width() const { return weights_.width(); }
  const Grid& weights() const { return weights_; }

  // Throws DomainError for out-of-bounds locations.
  ScoreVector Forward(std::span<const Location> locations) const;
  void AccumulateGradient(std::span<const Location> locations,
                          std::span<const double> score_grad,
                          std::span<double> param_grad) const;

  std::span<double> parameters() { return weights_.values(); }
  std::span<const double> parameters() const { return weights_.values(); }
  Grid ScoreGrid() const { return weights_; }

 private:
  Grid weights_;
};

class LinearFeatureScorer {
 public:
  static constexpr int kNumFeatures = 4;
  using Coefficients = std::array<double, kNumFeatures>;

  // All-zero coefficients.
  LinearFeatureScorer(int height, int width);
  LinearFeatureScorer(int height, int width, const Coefficients& coefficients);

  int height() const { return height_; }
  int width() const { return width_; }
  const Coefficients& coefficients() const { return coefficients_; }

  // Throws DomainError for out-of-bounds locations.
  Coefficients Features(Location l) const;

  ScoreVector Forward(std::span<const Location> locations) const;
  void AccumulateGradient(std::span<const Location> locations,
                          std::span<const double> score_grad,
                          std::span<double> param_grad) const;

  std::span<double> parameters() { return coefficients_; }
  std::span<const double> parameters() const { return coefficients_; }
  Grid ScoreGrid() const;

 private:
  int height_;
  int width_;
  Coefficients coefficients_{};
};

static_assert(PixelScorer<TabularScorer>);
static_assert(PixelScorer<LinearFeatureScorer>);

// Tabular weights are stored as a grayscale PFM, so they are rounded to
// float32 on write.
void WriteTabularScorer(const TabularScorer& scorer, const std::string& path,
                        Endian endian = Endian::kLittle);
TabularScorer ReadTabularScorer(const std::string& path);

// Four lines, one coefficient each, printed with round-trip precision.
void WriteLinearScorer(const LinearFeatureScorer& scorer, const std::string& path);
// Throws FormatError unless the file holds exactly four finite numbers.
LinearFeatureScorer ReadLinearScorer(const std::string& path, int height,
                                     int width);

}  // namespace plrank

#endif  // PLRANK_SCORER_H_

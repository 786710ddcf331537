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

#include "plrank/scorer.h"

#include <charconv>
#include <cmath>
#include <sstream>
#include <vector>

#include "plrank/errors.h"

namespace plrank {
namespace {

void CheckGradShapes(std::size_t n_locs, std::size_t n_grad) {
  if (n_locs != n_grad) {
    throw DomainError("score gradient length does not match location count");
  }
}

double NormalizedCoord(int i, int extent) {
  return extent > 1 ? static_cast<double>(i) / (extent - 1) : 0.0;
}

}  // namespace

TabularScorer::TabularScorer(int height, int width) : weights_(height, width) {}

TabularScorer::TabularScorer(Grid weights) : weights_(std::move(weights)) {
  for (double w : weights_.values()) {
    if (!std::isfinite(w)) throw DomainError("tabular weight is not finite");
  }
}

ScoreVector TabularScorer::Forward(std::span<const Location> locations) const {
  std::vector<double> out;
  out.reserve(locations.size());
  for (const Location& l : locations) {
    if (!weights_.InBounds(l)) throw DomainError("location out of bounds");
    out.push_back(weights_.at(l));
  }
  return ScoreVector(std::move(out));
}

void TabularScorer::AccumulateGradient(std::span<const Location> locations,
                                       std::span<const double> score_grad,
                                       std::span<double> param_grad) const {
  CheckGradShapes(locations.size(), score_grad.size());
  for (std::size_t k = 0; k < locations.size(); ++k) {
    if (!weights_.InBounds(locations[k])) throw DomainError("location out of bounds");
    param_grad[weights_.Index(locations[k])] += score_grad[k];
  }
}

LinearFeatureScorer::LinearFeatureScorer(int height, int width)
    : LinearFeatureScorer(height, width, Coefficients{}) {}

LinearFeatureScorer::LinearFeatureScorer(int height, int width,
                                         const Coefficients& coefficients)
    : height_(height), width_(width), coefficients_(coefficients) {
  if (height <= 0 || width <= 0) throw DomainError("scorer dimensions must be positive");
  for (double c : coefficients_) {
    if (!std::isfinite(c)) throw DomainError("linear coefficient is not finite");
  }
}

LinearFeatureScorer::Coefficients LinearFeatureScorer::Features(Location l) const {
  if (l.row < 0 || l.row >= height_ || l.col < 0 || l.col >= width_) {
    throw DomainError("location out of bounds");
  }
  const double cr = 0.5 * (height_ - 1);
  const double cc = 0.5 * (width_ - 1);
  const double corner = std::hypot(cr, cc);
  const double radial =
      corner > 0.0 ? std::hypot(l.row - cr, l.col - cc) / corner : 0.0;
  return {NormalizedCoord(l.row, height_), NormalizedCoord(l.col, width_),
          radial, 1.0};
}

ScoreVector LinearFeatureScorer::Forward(std::span<const Location> locations) const {
  std::vector<double> out;
  out.reserve(locations.size());
  for (const Location& l : locations) {
    const Coefficients f = Features(l);
    double s = 0.0;
    for (int k = 0; k < kNumFeatures; ++k) s += coefficients_[k] * f[k];
    out.push_back(s);
  }
  return ScoreVector(std::move(out));
}

void LinearFeatureScorer::AccumulateGradient(std::span<const Location> locations,
                                             std::span<const double> score_grad,
                                             std::span<double> param_grad) const {
  CheckGradShapes(locations.size(), score_grad.size());
  for (std::size_t i = 0; i < locations.size(); ++i) {
    const Coefficients f = Features(locations[i]);
    for (int k = 0; k < kNumFeatures; ++k) param_grad[k] += score_grad[i] * f[k];
  }
}

Grid LinearFeatureScorer::ScoreGrid() const {
  Grid out(height_, width_);
  for (int r = 0; r < height_; ++r) {
    for (int c = 0; c < width_; ++c) {
      const Coefficients f = Features({r, c});
      double s = 0.0;
      for (int k = 0; k < kNumFeatures; ++k) s += coefficients_[k] * f[k];
      out.at({r, c}) = s;
    }
  }
  return out;
}

void WriteTabularScorer(const TabularScorer& scorer, const std::string& path,
                        Endian endian) {
  PfmImage image;
  image.height = scorer.height();
  image.width = scorer.width();
  image.endian = endian;
  image.values.reserve(scorer.weights().size());
  for (double w : scorer.weights().values()) {
    image.values.push_back(static_cast<float>(w));
  }
  WritePfmImage(image, path);
}

TabularScorer ReadTabularScorer(const std::string& path) {
  const PfmImage image = ReadPfmImage(path);
  std::vector<double> weights(image.values.begin(), image.values.end());
  for (double w : weights) {
    if (!std::isfinite(w)) throw FormatError("scorer file holds a non-finite weight");
  }
  return TabularScorer(Grid(image.height, image.width, std::move(weights)));
}

void WriteLinearScorer(const LinearFeatureScorer& scorer, const std::string& path) {
  std::string text;
  for (double c : scorer.coefficients()) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), c);
    text.append(buf, ptr);
    text += '\n';
  }
  WriteFileBytes(path, text);
}

LinearFeatureScorer ReadLinearScorer(const std::string& path, int height,
                                     int width) {
  std::istringstream in(ReadFileBytes(path));
  LinearFeatureScorer::Coefficients coeffs{};
  std::string line;
  int count = 0;
  while (std::getline(in, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    if (count == LinearFeatureScorer::kNumFeatures) {
      throw FormatError("linear scorer file has more than 4 coefficients");
    }
    const auto first = line.find_first_not_of(" \t");
    const auto last = line.find_last_not_of(" \t\r");
    const char* b = line.data() + first;
    const char* e = line.data() + last + 1;
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(b, e, v);
    if (ec != std::errc() || ptr != e || !std::isfinite(v)) {
      throw FormatError("bad coefficient '" + line + "'");
    }
    coeffs[count++] = v;
  }
  if (count != LinearFeatureScorer::kNumFeatures) {
    throw FormatError("linear scorer file must hold exactly 4 coefficients");
  }
  return LinearFeatureScorer(height, width, coeffs);
}

}  // namespace plrank

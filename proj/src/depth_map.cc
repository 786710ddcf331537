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

#include "plrank/depth_map.h"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <string>
#include <utility>

#include "plrank/errors.h"

namespace plrank {
namespace {

void CheckShape(int height, int width, std::size_t n) {
  if (height <= 0 || width <= 0) {
    throw DomainError("grid dimensions must be positive");
  }
  if (n != static_cast<std::size_t>(height) * static_cast<std::size_t>(width)) {
    throw DomainError("grid has " + std::to_string(n) + " values, expected " +
                      std::to_string(height) + "x" + std::to_string(width));
  }
}

}  // namespace

Grid::Grid(int height, int width, double fill)
    : height_(height), width_(width) {
  if (height <= 0 || width <= 0) throw DomainError("grid dimensions must be positive");
  values_.assign(static_cast<std::size_t>(height) * width, fill);
}

Grid::Grid(int height, int width, std::vector<double> values)
    : height_(height), width_(width), values_(std::move(values)) {
  CheckShape(height, width, values_.size());
}

DepthMap::DepthMap(int height, int width, std::vector<float> values)
    : DepthMap(height, width, std::move(values),
               std::vector<std::uint8_t>(
                   static_cast<std::size_t>(std::max(height, 0)) *
                       static_cast<std::size_t>(std::max(width, 0)),
                   1)) {}

DepthMap::DepthMap(int height, int width, std::vector<float> values,
                   std::vector<std::uint8_t> mask)
    : height_(height),
      width_(width),
      values_(std::move(values)),
      mask_(std::move(mask)) {
  CheckShape(height, width, values_.size());
  if (mask_.size() != values_.size()) {
    throw DomainError("mask size does not match depth values");
  }
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (!mask_[i]) continue;
    mask_[i] = 1;
    if (!std::isfinite(values_[i]) || values_[i] < 0.0f) {
      throw DomainError("valid depth at index " + std::to_string(i) +
                        " must be finite and non-negative");
    }
  }
}

double DepthMap::depth(Location l) const {
  if (!InBounds(l)) throw DomainError("location out of bounds");
  return values_[Index(l)];
}

bool DepthMap::valid(Location l) const {
  if (!InBounds(l)) throw DomainError("location out of bounds");
  return mask_[Index(l)] != 0;
}

std::size_t DepthMap::CountValid() const {
  return static_cast<std::size_t>(std::count(mask_.begin(), mask_.end(), 1));
}

std::vector<std::size_t> DepthMap::ValidIndices() const {
  std::vector<std::size_t> out;
  out.reserve(mask_.size());
  for (std::size_t i = 0; i < mask_.size(); ++i) {
    if (mask_[i]) out.push_back(i);
  }
  return out;
}

double DepthMap::MaxValidDepth() const {
  double best = 0.0;
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (mask_[i]) best = std::max(best, static_cast<double>(values_[i]));
  }
  return best;
}

bool DepthMap::BitwiseEquals(const DepthMap& other) const {
  return height_ == other.height_ && width_ == other.width_ &&
         mask_ == other.mask_ &&
         std::memcmp(values_.data(), other.values_.data(),
                     values_.size() * sizeof(float)) == 0;
}

}  // namespace plrank

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

#ifndef PLRANK_DEPTH_MAP_H_
#define PLRANK_DEPTH_MAP_H_

#include <compare>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace plrank {

// Pixel position, 0-based, row-major.
struct Location {
  int row = 0;
  int col = 0;

  friend bool operator==(const Location&, const Location&) = default;
  friend auto operator<=>(const Location&, const Location&) = default;
};

// Dense H x W grid of doubles: learned scores, recovered depth, predictions.
class Grid {
 public:
  Grid() = default;
  Grid(int height, int width, double fill = 0.0);
  // Throws DomainError if values.size() != height * width.
  Grid(int height, int width, std::vector<double> values);

  int height() const { return height_; }
  int width() const { return width_; }
  std::size_t size() const { return values_.size(); }

  bool InBounds(Location l) const {
    return l.row >= 0 && l.row < height_ && l.col >= 0 && l.col < width_;
  }
  std::size_t Index(Location l) const {
    return static_cast<std::size_t>(l.row) * width_ + l.col;
  }
  double at(Location l) const { return values_[Index(l)]; }
  double& at(Location l) { return values_[Index(l)]; }

  std::span<const double> values() const { return values_; }
  std::span<double> values() { return values_; }

 private:
  int height_ = 0;
  int width_ = 0;
  std::vector<double> values_;
};

// Ground-truth depth (lower = closer) with a validity mask. Values are stored
// as 32-bit floats, the precision of the PFM interchange format. Immutable.
//
// Invariants, checked on construction: every valid value is finite and >= 0.
// Values at masked-out locations are unconstrained (may be NaN).
class DepthMap {
 public:
  DepthMap() = default;
  // All-valid map. Throws DomainError on size mismatch or invalid values.
  DepthMap(int height, int width, std::vector<float> values);
  // `mask[i] != 0` marks location i valid.
  DepthMap(int height, int width, std::vector<float> values,
           std::vector<std::uint8_t> mask);

  int height() const { return height_; }
  int width() const { return width_; }
  std::size_t size() const { return values_.size(); }

  bool InBounds(Location l) const {
    return l.row >= 0 && l.row < height_ && l.col >= 0 && l.col < width_;
  }
  std::size_t Index(Location l) const {
    return static_cast<std::size_t>(l.row) * width_ + l.col;
  }
  Location LocationOf(std::size_t index) const {
    return {static_cast<int>(index / width_), static_cast<int>(index % width_)};
  }

  // Throws DomainError if out of bounds.
  double depth(Location l) const;
  bool valid(Location l) const;

  std::span<const float> values() const { return values_; }
  std::span<const std::uint8_t> mask() const { return mask_; }

  std::size_t CountValid() const;
  // Row-major linear indices of valid pixels, ascending.
  std::vector<std::size_t> ValidIndices() const;
  double MaxValidDepth() const;

  // Values and mask identical bit for bit (NaN payloads included).
  bool BitwiseEquals(const DepthMap& other) const;

 private:
  int height_ = 0;
  int width_ = 0;
  std::vector<float> values_;
  std::vector<std::uint8_t> mask_;
};

}  // namespace plrank

#endif  // PLRANK_DEPTH_MAP_H_

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

#include "plrank/scene.h"

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>
#include <random>
#include <utility>
#include <vector>

#include "plrank/errors.h"
#include "plrank/random.h"

namespace plrank {
namespace {

constexpr std::array<std::pair<SceneKind, std::string_view>, 5> kKindNames = {{
    {SceneKind::kRampHorizontal, "ramp-h"},
    {SceneKind::kRampVertical, "ramp-v"},
    {SceneKind::kRadialBowl, "bowl"},
    {SceneKind::kSteps, "steps"},
    {SceneKind::kRandomSmooth, "random-smooth"},
}};

void Validate(const SceneSpec& spec) {
  if (spec.height < kMinSceneSize || spec.width < kMinSceneSize) {
    throw DomainError("scene must be at least 4x4");
  }
  if (!std::isfinite(spec.depth_min) || !std::isfinite(spec.depth_max) ||
      spec.depth_min < 0.0 || !(spec.depth_max > spec.depth_min)) {
    throw DomainError("depth range must satisfy 0 <= min < max");
  }
}

// Maps raw[] affinely onto [lo, hi].
void Normalize(std::vector<double>& raw, double lo, double hi) {
  const auto [mn, mx] = std::minmax_element(raw.begin(), raw.end());
  const double a = *mn;
  const double span = *mx - *mn;
  for (double& v : raw) v = span > 0.0 ? lo + (hi - lo) * (v - a) / span : lo;
}

std::vector<double> Ramp(const SceneSpec& s, bool horizontal) {
  std::vector<double> out(static_cast<std::size_t>(s.height) * s.width);
  const double steps = (horizontal ? s.width : s.height) - 1;
  for (int r = 0; r < s.height; ++r) {
    for (int c = 0; c < s.width; ++c) {
      const double t = (horizontal ? c : r) / steps;
      out[static_cast<std::size_t>(r) * s.width + c] =
          s.depth_min + (s.depth_max - s.depth_min) * t;
    }
  }
  return out;
}

std::vector<double> Bowl(const SceneSpec& s) {
  const double cr = s.height / 2;
  const double cc = s.width / 2;
  double dmax = 0.0;
  for (double r : {0.0, s.height - 1.0}) {
    for (double c : {0.0, s.width - 1.0}) dmax = std::max(dmax, std::hypot(r - cr, c - cc));
  }
  std::vector<double> out(static_cast<std::size_t>(s.height) * s.width);
  for (int r = 0; r < s.height; ++r) {
    for (int c = 0; c < s.width; ++c) {
      out[static_cast<std::size_t>(r) * s.width + c] =
          s.depth_min +
          (s.depth_max - s.depth_min) * std::hypot(r - cr, c - cc) / dmax;
    }
  }
  return out;
}

std::vector<double> Steps(const SceneSpec& s, std::vector<std::uint8_t>& mask) {
  const int bands = std::clamp(s.width / 8, 2, 8);
  std::vector<double> levels(bands);
  for (int k = 0; k < bands; ++k) {
    levels[k] = s.depth_min + (s.depth_max - s.depth_min) * k / (bands - 1);
  }
  Rng rng(s.seed);
  std::shuffle(levels.begin(), levels.end(), rng);

  std::vector<int> band_of(s.width);
  for (int c = 0; c < s.width; ++c) band_of[c] = c * bands / s.width;

  std::vector<double> out(static_cast<std::size_t>(s.height) * s.width);
  for (int r = 0; r < s.height; ++r) {
    for (int c = 0; c < s.width; ++c) {
      const std::size_t i = static_cast<std::size_t>(r) * s.width + c;
      out[i] = levels[band_of[c]];
      const bool left_edge = c > 0 && band_of[c - 1] != band_of[c];
      const bool right_edge = c + 1 < s.width && band_of[c + 1] != band_of[c];
      mask[i] = (left_edge || right_edge) ? 0 : 1;
    }
  }
  return out;
}

std::vector<double> RandomSmooth(const SceneSpec& s) {
  Rng rng(s.seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_real_distribution<double> sym(-1.0, 1.0);
  const double gx = sym(rng);
  const double gy = sym(rng);
  struct Bump {
    double r, c, sigma, amp;
  };
  std::vector<Bump> bumps(6);
  for (Bump& b : bumps) {
    b.r = unit(rng) * (s.height - 1);
    b.c = unit(rng) * (s.width - 1);
    b.sigma = (0.1 + 0.25 * unit(rng)) * std::max(s.height, s.width);
    b.amp = sym(rng);
  }
  std::vector<double> out(static_cast<std::size_t>(s.height) * s.width);
  for (int r = 0; r < s.height; ++r) {
    for (int c = 0; c < s.width; ++c) {
      double v = gx * c / s.width + gy * r / s.height;
      for (const Bump& b : bumps) {
        const double d2 = (r - b.r) * (r - b.r) + (c - b.c) * (c - b.c);
        v += b.amp * std::exp(-d2 / (2.0 * b.sigma * b.sigma));
      }
      out[static_cast<std::size_t>(r) * s.width + c] = v;
    }
  }
  Normalize(out, s.depth_min, s.depth_max);
  return out;
}

}  // namespace

DepthMap GenerateScene(const SceneSpec& spec) {
  Validate(spec);
  std::vector<std::uint8_t> mask(static_cast<std::size_t>(spec.height) * spec.width, 1);
  std::vector<double> depth;
  switch (spec.kind) {
    case SceneKind::kRampHorizontal:
      depth = Ramp(spec, true);
      break;
    case SceneKind::kRampVertical:
      depth = Ramp(spec, false);
      break;
    case SceneKind::kRadialBowl:
      depth = Bowl(spec);
      break;
    case SceneKind::kSteps:
      depth = Steps(spec, mask);
      break;
    case SceneKind::kRandomSmooth:
      depth = RandomSmooth(spec);
      break;
  }
  std::vector<float> values(depth.size());
  std::transform(depth.begin(), depth.end(), values.begin(),
                 [](double d) { return static_cast<float>(d); });
  return DepthMap(spec.height, spec.width, std::move(values), std::move(mask));
}

std::string_view SceneKindName(SceneKind kind) {
  for (const auto& [k, name] : kKindNames) {
    if (k == kind) return name;
  }
  return "unknown";
}

std::optional<SceneKind> ParseSceneKind(std::string_view name) {
  for (const auto& [k, n] : kKindNames) {
    if (n == name) return k;
  }
  return std::nullopt;
}

}  // namespace plrank

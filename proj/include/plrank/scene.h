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

// Synthetic depth scenes with known ground-truth orderings.

#ifndef PLRANK_SCENE_H_
#define PLRANK_SCENE_H_

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "plrank/depth_map.h"

namespace plrank {

enum class SceneKind {
  kRampHorizontal,  // depth grows left to right
  kRampVertical,    // depth grows top to bottom
  kRadialBowl,      // minimum at pixel (H/2, W/2), growing with distance
  kSteps,           // vertical bands of constant depth, borders masked
  kRandomSmooth,    // seeded sum of Gaussian bumps and a plane
};

struct SceneSpec {
  SceneKind kind = SceneKind::kRampHorizontal;
  int height = 64;
  int width = 64;
  double depth_min = 0.0;
  double depth_max = 10.0;
  std::uint64_t seed = 0;
};

inline constexpr int kMinSceneSize = 4;

// Deterministic in `spec`. Throws DomainError for dimensions below 4x4 or a
// depth range that is not 0 <= min < max.
DepthMap GenerateScene(const SceneSpec& spec);

// "ramp-h", "ramp-v", "bowl", "steps", "random-smooth".
std::string_view SceneKindName(SceneKind kind);
std::optional<SceneKind> ParseSceneKind(std::string_view name);

}  // namespace plrank

#endif  // PLRANK_SCENE_H_

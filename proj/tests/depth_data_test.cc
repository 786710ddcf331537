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


#include <gtest/gtest.h>

#include <bit>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <limits>
#include <string>
#include <vector>

#include "plrank/depth_map.h"
#include "plrank/errors.h"
#include "plrank/pfm_io.h"
#include "plrank/scene.h"
#include "testing/test_util.h"

namespace plrank {
namespace {

using testing::ScratchDir;

std::string LittleEndianFloats(std::initializer_list<float> values) {
  std::string out;
  for (float f : values) {
    std::uint32_t bits = std::bit_cast<std::uint32_t>(f);
    for (int b = 0; b < 4; ++b) out.push_back(static_cast<char>((bits >> (8 * b)) & 0xff));
  }
  return out;
}

TEST(DepthMapTest, AccessorsAndValidation) {
  const DepthMap map(2, 3, {0.f, 1.f, 2.f, 3.f, 4.f, 5.f}, {1, 1, 0, 1, 1, 1});
  EXPECT_EQ(map.depth({1, 0}), 3.0);
  EXPECT_FALSE(map.valid({0, 2}));
  EXPECT_EQ(map.CountValid(), 5u);
  EXPECT_EQ(map.ValidIndices(), (std::vector<std::size_t>{0, 1, 3, 4, 5}));
  EXPECT_EQ(map.MaxValidDepth(), 5.0);
  EXPECT_EQ(map.LocationOf(4), (Location{1, 1}));
  EXPECT_THROW(map.depth({2, 0}), DomainError);
  EXPECT_THROW(map.valid({0, -1}), DomainError);
  EXPECT_THROW(DepthMap(2, 2, {1.f, 2.f, 3.f}), DomainError);
  EXPECT_THROW(DepthMap(1, 2, {1.f, -2.f}), DomainError);
  EXPECT_THROW(DepthMap(1, 2, {1.f, NAN}), DomainError);
  // Masked pixels may hold anything.
  EXPECT_NO_THROW(DepthMap(1, 2, {1.f, NAN}, {1, 0}));
  EXPECT_THROW(Grid(2, 2, std::vector<double>{1.0}), DomainError);
}

TEST(PfmTest, GoldenTwoByTwo) {
  const PfmImage image{2, 2, {0.f, 1.f, 2.f, 3.f}, Endian::kLittle};
  const std::string expected = "Pf\n2 2\n-1.0\n" + LittleEndianFloats({2.f, 3.f, 0.f, 1.f});
  EXPECT_EQ(EncodePfm(image), expected);
  const PfmImage back = DecodePfm(expected);
  EXPECT_EQ(back.values, image.values);
  EXPECT_EQ(back.endian, Endian::kLittle);
}

TEST(PfmTest, BigEndianHeaderAndByteOrder) {
  const PfmImage image{1, 1, {1.0f}, Endian::kBig};
  EXPECT_EQ(EncodePfm(image), std::string("Pf\n1 1\n1.0\n\x3f\x80\x00\x00", 15));
}

TEST(PfmTest, ScaleMagnitudeIsIgnoredOnRead) {
  const std::string bytes = "Pf\n1 1\n-0.5\n" + LittleEndianFloats({7.5f});
  EXPECT_EQ(DecodePfm(bytes).values, std::vector<float>{7.5f});
}

TEST(PfmTest, RejectsMalformedInput) {
  EXPECT_THROW(DecodePfm("PF\n1 1\n-1.0\n" + LittleEndianFloats({0.f, 0.f, 0.f})),
               FormatError);
  EXPECT_THROW(DecodePfm("P5\n1 1\n255\n\x01"), FormatError);
  EXPECT_THROW(DecodePfm("Pf\n2 2\n-1.0\n" + LittleEndianFloats({1.f})), FormatError);
  EXPECT_THROW(DecodePfm("Pf\n2 x\n-1.0\n"), FormatError);
  EXPECT_THROW(DecodePfm("Pf\n1 1\n0.0\n" + LittleEndianFloats({1.f})), FormatError);
  EXPECT_THROW(DecodePfm("Pf\n1 1"), FormatError);
}

TEST(PfmTest, MaskPgmRoundTrip) {
  const std::vector<std::uint8_t> mask = {1, 0, 0, 1, 1, 1};
  const std::string bytes = EncodeMaskPgm(2, 3, mask);
  EXPECT_EQ(bytes.substr(0, 11), "P5\n3 2\n255\n");
  EXPECT_EQ(DecodeMaskPgm(bytes, 2, 3), mask);
  EXPECT_THROW(DecodeMaskPgm(bytes, 3, 2), FormatError);
}

TEST(PfmTest, DepthMapRoundTripBothEndians) {
  ScratchDir dir;
  Rng rng(12);
  for (Endian endian : {Endian::kLittle, Endian::kBig}) {
    for (int trial = 0; trial < 10; ++trial) {
      const int h = 3 + trial;
      const int w = 5 + 2 * trial;
      std::vector<float> values(static_cast<std::size_t>(h) * w);
      std::vector<std::uint8_t> mask(values.size());
      std::uniform_real_distribution<float> depth(0.f, 50.f);
      for (std::size_t i = 0; i < values.size(); ++i) {
        mask[i] = (i % 7) != 3;
        values[i] = mask[i] ? depth(rng) : std::numeric_limits<float>::quiet_NaN();
      }
      values[0] = std::numeric_limits<float>::denorm_min();
      const DepthMap map(h, w, values, mask);
      const std::string path = dir.File("m.pfm");
      WritePfm(map, path, endian);
      EXPECT_TRUE(ReadPfm(path).BitwiseEquals(map));
    }
  }
}

TEST(PfmTest, MissingSidecarMeansAllValid) {
  ScratchDir dir;
  const std::string path = dir.File("plain.pfm");
  WritePfmImage({2, 2, {1.f, 2.f, 3.f, 4.f}, Endian::kLittle}, path);
  const DepthMap map = ReadPfm(path);
  EXPECT_EQ(map.CountValid(), 4u);
  EXPECT_EQ(map.depth({0, 1}), 2.0);
}

TEST(PfmTest, InvalidDepthInsideValidRegionIsFormatError) {
  ScratchDir dir;
  const std::string path = dir.File("neg.pfm");
  WritePfmImage({1, 2, {1.f, -1.f}, Endian::kLittle}, path);
  EXPECT_THROW(ReadPfm(path), FormatError);
}

TEST(PfmTest, IoErrors) {
  ScratchDir dir;
  EXPECT_THROW(ReadPfm(dir.File("absent.pfm")), IoError);
  EXPECT_THROW(WritePfm(DepthMap(1, 2, {1.f, 2.f}), dir.File("no/such/dir.pfm")), IoError);
}

TEST(SceneTest, RampsAreLinearAndSpanRange) {
  const DepthMap h = GenerateScene({SceneKind::kRampHorizontal, 8, 11, 2.0, 12.0, 0});
  const DepthMap v = GenerateScene({SceneKind::kRampVertical, 11, 8, 2.0, 12.0, 0});
  for (int a = 0; a < 11; ++a) {
    for (int b = 0; b < 8; ++b) {
      const float expected = static_cast<float>(2.0 + a);
      EXPECT_EQ(h.depth({b, a}), expected);
      EXPECT_EQ(v.depth({a, b}), expected);
    }
  }
  EXPECT_EQ(h.CountValid(), h.size());
}

TEST(SceneTest, BowlHasMinimumAtCenter) {
  const DepthMap map = GenerateScene({SceneKind::kRadialBowl, 9, 12, 1.0, 5.0, 0});
  EXPECT_FLOAT_EQ(map.depth({4, 6}), 1.0f);
  double mx = 0.0;
  for (float d : map.values()) {
    EXPECT_GE(d, 1.0f);
    mx = std::max(mx, static_cast<double>(d));
  }
  EXPECT_FLOAT_EQ(mx, 5.0f);
}

TEST(SceneTest, StepsMaskBandBorders) {
  const DepthMap map = GenerateScene({SceneKind::kSteps, 6, 32, 0.0, 10.0, 5});
  for (int r = 0; r < map.height(); ++r) {
    for (int c = 0; c + 1 < map.width(); ++c) {
      const bool boundary = map.values()[map.Index({r, c})] !=
                            map.values()[map.Index({r, c + 1})];
      if (boundary) {
        EXPECT_FALSE(map.valid({r, c}));
        EXPECT_FALSE(map.valid({r, c + 1}));
      }
    }
  }
  EXPECT_GT(map.CountValid(), 0u);
  EXPECT_LT(map.CountValid(), map.size());
}

TEST(SceneTest, RandomSmoothIsSeededAndBounded) {
  const SceneSpec spec{SceneKind::kRandomSmooth, 20, 30, 1.0, 4.0, 77};
  const DepthMap a = GenerateScene(spec);
  EXPECT_TRUE(a.BitwiseEquals(GenerateScene(spec)));
  SceneSpec other = spec;
  other.seed = 78;
  EXPECT_FALSE(a.BitwiseEquals(GenerateScene(other)));
  for (float d : a.values()) {
    EXPECT_GE(d, 1.0f);
    EXPECT_LE(d, 4.0f);
  }
}

TEST(SceneTest, NamesRoundTripAndBadSpecsThrow) {
  for (SceneKind k : {SceneKind::kRampHorizontal, SceneKind::kRampVertical,
                      SceneKind::kRadialBowl, SceneKind::kSteps,
                      SceneKind::kRandomSmooth}) {
    EXPECT_EQ(ParseSceneKind(SceneKindName(k)), k);
  }
  EXPECT_FALSE(ParseSceneKind("spiral").has_value());
  EXPECT_THROW(GenerateScene({SceneKind::kRampHorizontal, 3, 10, 0.0, 1.0, 0}),
               DomainError);
  EXPECT_THROW(GenerateScene({SceneKind::kRampHorizontal, 8, 8, 2.0, 2.0, 0}),
               DomainError);
  EXPECT_THROW(GenerateScene({SceneKind::kRampHorizontal, 8, 8, -1.0, 2.0, 0}),
               DomainError);
}

}  // namespace
}  // namespace plrank

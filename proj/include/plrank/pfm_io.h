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

// Grayscale Portable Float Map I/O.
//
// Layout:
//   "Pf\n"                 magic (color "PF" is rejected)
//   "<W> <H>\n"
//   "-1.0\n" or "1.0\n"    scale; negative means little-endian samples
//   W*H float32 samples, bottom row first, left to right within a row
//
// A DepthMap's validity mask lives in a sidecar binary PGM at
// "<path>.mask.pgm" ("P5\n<W> <H>\n255\n", one byte per pixel, top row first,
// 255 = valid, 0 = masked).

#ifndef PLRANK_PFM_IO_H_
#define PLRANK_PFM_IO_H_

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "plrank/depth_map.h"

namespace plrank {

enum class Endian { kLittle, kBig };

// Raw float image, row-major with row 0 at the top.
struct PfmImage {
  int height = 0;
  int width = 0;
  std::vector<float> values;
  Endian endian = Endian::kLittle;
};

std::string EncodePfm(const PfmImage& image);
// Throws FormatError on a malformed header or wrong payload size.
PfmImage DecodePfm(std::string_view bytes);

std::string EncodeMaskPgm(int height, int width,
                          const std::vector<std::uint8_t>& mask);
std::vector<std::uint8_t> DecodeMaskPgm(std::string_view bytes, int height,
                                        int width);

// Whole-file helpers. Throw IoError when the file cannot be opened.
std::string ReadFileBytes(const std::string& path);
void WriteFileBytes(const std::string& path, std::string_view bytes);

PfmImage ReadPfmImage(const std::string& path);
void WritePfmImage(const PfmImage& image, const std::string& path);

std::string MaskSidecarPath(const std::string& pfm_path);

// Writes the PFM and its mask sidecar.
void WritePfm(const DepthMap& map, const std::string& path,
              Endian endian = Endian::kLittle);
// Reads a PFM and its sidecar; a missing sidecar means every pixel is valid.
// Throws FormatError on sidecar dimension mismatch or a NaN, infinite or
// negative value inside the valid region.
DepthMap ReadPfm(const std::string& path);

}  // namespace plrank

#endif  // PLRANK_PFM_IO_H_

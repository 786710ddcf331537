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

#include "plrank/pfm_io.h"

#include <bit>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <sstream>

#include "plrank/errors.h"

namespace plrank {
namespace {

std::uint32_t ByteSwap(std::uint32_t x) {
  return (x >> 24) | ((x >> 8) & 0x0000FF00u) | ((x << 8) & 0x00FF0000u) |
         (x << 24);
}

Endian HostEndian() {
  return std::endian::native == std::endian::little ? Endian::kLittle
                                                    : Endian::kBig;
}

// Minimal tokenizer for the ASCII header shared by PFM and PGM.
class HeaderReader {
 public:
  explicit HeaderReader(std::string_view bytes) : bytes_(bytes) {}

  std::string_view Token() {
    while (pos_ < bytes_.size() &&
           std::isspace(static_cast<unsigned char>(bytes_[pos_]))) {
      ++pos_;
    }
    const std::size_t start = pos_;
    while (pos_ < bytes_.size() &&
           !std::isspace(static_cast<unsigned char>(bytes_[pos_]))) {
      ++pos_;
    }
    if (start == pos_) throw FormatError("truncated header");
    return bytes_.substr(start, pos_ - start);
  }

  int PositiveInt() {
    const std::string_view tok = Token();
    int value = 0;
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
    if (ec != std::errc() || ptr != tok.data() + tok.size() || value <= 0) {
      throw FormatError("bad header dimension '" + std::string(tok) + "'");
    }
    return value;
  }

  // Consumes the single whitespace byte separating header and payload.
  std::string_view Payload() {
    if (pos_ >= bytes_.size() ||
        !std::isspace(static_cast<unsigned char>(bytes_[pos_]))) {
      throw FormatError("missing separator before binary payload");
    }
    return bytes_.substr(pos_ + 1);
  }

 private:
  std::string_view bytes_;
  std::size_t pos_ = 0;
};

}  // namespace

std::string EncodePfm(const PfmImage& image) {
  const std::size_t n =
      static_cast<std::size_t>(image.height) * static_cast<std::size_t>(image.width);
  if (image.height <= 0 || image.width <= 0 || image.values.size() != n) {
    throw DomainError("PFM image shape does not match its values");
  }
  std::string out = "Pf\n" + std::to_string(image.width) + " " +
                    std::to_string(image.height) + "\n" +
                    (image.endian == Endian::kLittle ? "-1.0\n" : "1.0\n");
  const std::size_t header = out.size();
  out.resize(header + n * sizeof(float));
  const bool swap = image.endian != HostEndian();
  char* dst = out.data() + header;
  for (int row = image.height - 1; row >= 0; --row) {
    for (int col = 0; col < image.width; ++col) {
      std::uint32_t bits = std::bit_cast<std::uint32_t>(
          image.values[static_cast<std::size_t>(row) * image.width + col]);
      if (swap) bits = ByteSwap(bits);
      std::memcpy(dst, &bits, sizeof(bits));
      dst += sizeof(bits);
    }
  }
  return out;
}

PfmImage DecodePfm(std::string_view bytes) {
  HeaderReader reader(bytes);
  const std::string_view magic = reader.Token();
  if (magic == "PF") throw FormatError("color PFM ('PF') is not supported");
  if (magic != "Pf") throw FormatError("not a grayscale PFM file");
  PfmImage image;
  image.width = reader.PositiveInt();
  image.height = reader.PositiveInt();
  const std::string scale_tok(reader.Token());
  double scale = 0.0;
  try {
    std::size_t used = 0;
    scale = std::stod(scale_tok, &used);
    if (used != scale_tok.size()) throw FormatError("");
  } catch (const std::exception&) {
    throw FormatError("bad PFM scale '" + scale_tok + "'");
  }
  if (scale == 0.0 || !std::isfinite(scale)) {
    throw FormatError("PFM scale must be a non-zero number");
  }
  image.endian = scale < 0.0 ? Endian::kLittle : Endian::kBig;

  const std::string_view payload = reader.Payload();
  const std::size_t n =
      static_cast<std::size_t>(image.height) * static_cast<std::size_t>(image.width);
  if (payload.size() != n * sizeof(float)) {
    throw FormatError("PFM payload has " + std::to_string(payload.size()) +
                      " bytes, expected " + std::to_string(n * sizeof(float)));
  }
  image.values.resize(n);
  const bool swap = image.endian != HostEndian();
  const char* src = payload.data();
  for (int row = image.height - 1; row >= 0; --row) {
    for (int col = 0; col < image.width; ++col) {
      std::uint32_t bits;
      std::memcpy(&bits, src, sizeof(bits));
      src += sizeof(bits);
      if (swap) bits = ByteSwap(bits);
      image.values[static_cast<std::size_t>(row) * image.width + col] =
          std::bit_cast<float>(bits);
    }
  }
  return image;
}

std::string EncodeMaskPgm(int height, int width,
                          const std::vector<std::uint8_t>& mask) {
  std::string out = "P5\n" + std::to_string(width) + " " +
                    std::to_string(height) + "\n255\n";
  out.reserve(out.size() + mask.size());
  for (std::uint8_t m : mask) out.push_back(m ? static_cast<char>(255) : '\0');
  return out;
}

std::vector<std::uint8_t> DecodeMaskPgm(std::string_view bytes, int height,
                                        int width) {
  HeaderReader reader(bytes);
  if (reader.Token() != "P5") throw FormatError("mask sidecar is not a binary PGM");
  const int w = reader.PositiveInt();
  const int h = reader.PositiveInt();
  if (w != width || h != height) {
    throw FormatError("mask sidecar is " + std::to_string(w) + "x" +
                      std::to_string(h) + ", depth map is " +
                      std::to_string(width) + "x" + std::to_string(height));
  }
  if (reader.Token() != "255") throw FormatError("mask sidecar maxval must be 255");
  const std::string_view payload = reader.Payload();
  if (payload.size() != static_cast<std::size_t>(w) * h) {
    throw FormatError("mask sidecar payload size mismatch");
  }
  std::vector<std::uint8_t> mask(payload.size());
  for (std::size_t i = 0; i < payload.size(); ++i) {
    mask[i] = payload[i] != '\0' ? 1 : 0;
  }
  return mask;
}

std::string ReadFileBytes(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path + "' for reading");
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw IoError("error reading '" + path + "'");
  return std::move(buf).str();
}

void WriteFileBytes(const std::string& path, std::string_view bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw IoError("error writing '" + path + "'");
}

PfmImage ReadPfmImage(const std::string& path) {
  return DecodePfm(ReadFileBytes(path));
}

void WritePfmImage(const PfmImage& image, const std::string& path) {
  WriteFileBytes(path, EncodePfm(image));
}

std::string MaskSidecarPath(const std::string& pfm_path) {
  return pfm_path + ".mask.pgm";
}

void WritePfm(const DepthMap& map, const std::string& path, Endian endian) {
  PfmImage image;
  image.height = map.height();
  image.width = map.width();
  image.values.assign(map.values().begin(), map.values().end());
  image.endian = endian;
  WritePfmImage(image, path);
  WriteFileBytes(MaskSidecarPath(path),
                 EncodeMaskPgm(map.height(), map.width(),
                               {map.mask().begin(), map.mask().end()}));
}

DepthMap ReadPfm(const std::string& path) {
  PfmImage image = ReadPfmImage(path);
  const std::string mask_path = MaskSidecarPath(path);
  std::vector<std::uint8_t> mask;
  if (std::filesystem::exists(mask_path)) {
    mask = DecodeMaskPgm(ReadFileBytes(mask_path), image.height, image.width);
  } else {
    mask.assign(image.values.size(), 1);
  }
  for (std::size_t i = 0; i < mask.size(); ++i) {
    if (mask[i] && !(std::isfinite(image.values[i]) && image.values[i] >= 0.0f)) {
      throw FormatError("invalid depth value inside the valid region of '" +
                        path + "'");
    }
  }
  return DepthMap(image.height, image.width, std::move(image.values),
                  std::move(mask));
}

}  // namespace plrank

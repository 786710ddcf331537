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

#include "plrank/ranking_sampler.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <sstream>

#include "internal/draw.h"
#include "plrank/errors.h"
#include "plrank/parallel.h"
#include "plrank/pfm_io.h"

namespace plrank {
namespace {

std::string_view Trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

int ParseInt(std::string_view tok) {
  tok = Trim(tok);
  int v = 0;
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc() || ptr != tok.data() + tok.size()) {
    throw FormatError("bad integer '" + std::string(tok) + "'");
  }
  return v;
}

double ParseDouble(std::string_view tok) {
  tok = Trim(tok);
  double v = 0;
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc() || ptr != tok.data() + tok.size()) {
    throw FormatError("bad number '" + std::string(tok) + "'");
  }
  return v;
}

std::string FormatDouble(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ptr);
}

}  // namespace

void SamplerConfig::Validate() const {
  if (ranking_size < 2) throw DomainError("ranking size must be at least 2");
  if (rankings_per_image < 1) throw DomainError("rankings per image must be at least 1");
  if (oversample_factor < 2) throw DomainError("oversample factor must exceed 1");
  if (!(tau >= 0.0) || !std::isfinite(tau)) throw DomainError("tau must be >= 0");
  if (!std::isfinite(penalty)) throw DomainError("penalty must be finite");
}

std::vector<Location> RankingSample::OrderedLocations() const {
  std::vector<Location> out;
  out.reserve(ground_truth.size());
  for (std::size_t idx : ground_truth.order()) out.push_back(locations.at(idx));
  return out;
}

bool NearEqualDepths(double a, double b, double tau) {
  double ratio;
  if (a == 0.0 && b == 0.0) {
    ratio = 1.0;
  } else if (a == 0.0 || b == 0.0) {
    ratio = std::numeric_limits<double>::infinity();
  } else {
    ratio = std::max(a / b, b / a);
  }
  return ratio < 1.0 + tau;
}

CandidateScore ScoreCandidate(std::span<const Location> locations,
                              const DepthMap& map, const SamplerConfig& cfg) {
  const std::size_t n = locations.size();
  if (n < 2) throw DomainError("candidate set needs at least 2 locations");
  std::vector<std::size_t> pixel(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (!map.valid(locations[i])) throw DomainError("candidate location is masked");
    pixel[i] = map.Index(locations[i]);
  }
  {
    std::vector<std::size_t> sorted = pixel;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
      throw DomainError("candidate set has a duplicate location");
    }
  }
  const auto values = map.values();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    const float da = values[pixel[a]];
    const float db = values[pixel[b]];
    return da < db || (da == db && pixel[a] < pixel[b]);
  });

  double score = 0.0;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const double d1 = values[pixel[order[i]]];
    const double d2 = values[pixel[order[i + 1]]];
    score += std::abs(d2 - d1);
    if (NearEqualDepths(d1, d2, cfg.tau)) score += cfg.penalty;
  }
  return {Ranking(std::move(order)), score};
}

std::vector<std::vector<Location>> DrawCandidateSets(const DepthMap& map,
                                                     const SamplerConfig& cfg,
                                                     Rng& rng) {
  cfg.Validate();
  const std::vector<std::size_t> valid = map.ValidIndices();
  const std::size_t n = static_cast<std::size_t>(cfg.ranking_size);
  if (valid.size() < n) {
    throw CapacityError("depth map has " + std::to_string(valid.size()) +
                        " valid pixels, ranking size is " + std::to_string(n));
  }
  const std::size_t total = static_cast<std::size_t>(cfg.oversample_factor) *
                            static_cast<std::size_t>(cfg.rankings_per_image);
  std::vector<std::vector<Location>> sets(total);
  for (auto& set : sets) {
    for (std::size_t idx : internal::DrawDistinct(valid, n, rng)) {
      set.push_back(map.LocationOf(idx));
    }
  }
  return sets;
}

std::vector<RankingSample> SampleRankings(const DepthMap& map,
                                          const SamplerConfig& cfg, Rng& rng) {
  std::vector<std::vector<Location>> sets = DrawCandidateSets(map, cfg, rng);
  std::vector<CandidateScore> scored(sets.size());
  ParallelFor(sets.size(), cfg.num_threads, [&](std::size_t i) {
    scored[i] = ScoreCandidate(sets[i], map, cfg);
  });

  std::vector<std::size_t> idx(sets.size());
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  const std::size_t keep = static_cast<std::size_t>(cfg.rankings_per_image);
  std::partial_sort(idx.begin(), idx.begin() + keep, idx.end(),
                    [&](std::size_t a, std::size_t b) {
                      if (scored[a].informativeness != scored[b].informativeness) {
                        return scored[a].informativeness > scored[b].informativeness;
                      }
                      return a < b;
                    });

  std::vector<RankingSample> out;
  out.reserve(keep);
  for (std::size_t k = 0; k < keep; ++k) {
    const std::size_t i = idx[k];
    out.push_back({std::move(sets[i]), std::move(scored[i].ground_truth),
                   scored[i].informativeness, 1.0});
  }
  return out;
}

std::string FormatRankingSample(const RankingSample& sample) {
  std::string line;
  bool first = true;
  for (const Location& l : sample.OrderedLocations()) {
    if (!first) line += ';';
    first = false;
    line += std::to_string(l.row) + "," + std::to_string(l.col);
  }
  line += " | " + FormatDouble(sample.informativeness);
  return line;
}

RankingSample ParseRankingSample(std::string_view line) {
  const auto bar = line.find('|');
  if (bar == std::string_view::npos) throw FormatError("ranking line lacks '|'");
  RankingSample sample;
  std::string_view locs = Trim(line.substr(0, bar));
  while (!locs.empty()) {
    const auto semi = locs.find(';');
    const std::string_view item = locs.substr(0, semi);
    const auto comma = item.find(',');
    if (comma == std::string_view::npos) {
      throw FormatError("location '" + std::string(item) + "' lacks ','");
    }
    sample.locations.push_back({ParseInt(item.substr(0, comma)),
                                ParseInt(item.substr(comma + 1))});
    if (semi == std::string_view::npos) break;
    locs = locs.substr(semi + 1);
  }
  if (sample.locations.size() < 2) throw FormatError("ranking line has fewer than 2 locations");
  {
    std::vector<Location> sorted = sample.locations;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
      throw FormatError("ranking line repeats a location");
    }
  }
  sample.ground_truth = Ranking::Identity(sample.locations.size());
  sample.informativeness = ParseDouble(line.substr(bar + 1));
  return sample;
}

void WriteRankingsFile(const std::string& path,
                       const std::vector<std::vector<RankingSample>>& epochs) {
  std::string text;
  for (std::size_t e = 0; e < epochs.size(); ++e) {
    if (epochs.size() > 1) text += "# epoch " + std::to_string(e) + "\n";
    for (const RankingSample& s : epochs[e]) text += FormatRankingSample(s) + "\n";
  }
  WriteFileBytes(path, text);
}

std::vector<std::vector<RankingSample>> ReadRankingsFile(const std::string& path) {
  std::istringstream in(ReadFileBytes(path));
  std::vector<std::vector<RankingSample>> epochs;
  std::string line;
  bool open_block = false;
  while (std::getline(in, line)) {
    const std::string_view t = Trim(line);
    if (t.empty()) continue;
    if (t.front() == '#') {
      if (t.rfind("# epoch", 0) == 0) {
        epochs.emplace_back();
        open_block = true;
      }
      continue;
    }
    if (!open_block) {
      epochs.emplace_back();
      open_block = true;
    }
    epochs.back().push_back(ParseRankingSample(t));
  }
  if (epochs.empty() || epochs.front().empty()) {
    throw FormatError("rankings file '" + path + "' holds no rankings");
  }
  for (const auto& block : epochs) {
    if (block.empty()) throw FormatError("rankings file has an empty epoch block");
  }
  return epochs;
}

}  // namespace plrank

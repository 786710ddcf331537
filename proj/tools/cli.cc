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

#include "cli.h"

#include <charconv>
#include <cstdint>
#include <cstdlib>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "plrank/errors.h"
#include "plrank/eval_metrics.h"
#include "plrank/metric_recovery.h"
#include "plrank/pfm_io.h"
#include "plrank/random.h"
#include "plrank/ranking_sampler.h"
#include "plrank/report.h"
#include "plrank/scene.h"
#include "plrank/scorer.h"
#include "plrank/trainer.h"

#ifndef PLRANK_VERSION
#define PLRANK_VERSION "dev"
#endif

namespace plrank::cli {
namespace {

using json = nlohmann::json;

// Bad flag value detected after parsing.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct GenerateArgs {
  std::string kind = "ramp-h";
  std::string size = "64x64";
  std::string range = "0:10";
  std::uint64_t seed = 0;
  std::string out;
  std::string endian = "little";
};
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE_WITH_DEFAULT(GenerateArgs, kind, size, range,
                                                seed, out, endian)

struct SampleArgs {
  std::string map;
  std::string out;
  int n = 5;
  int r = 400;
  int oversample = 5;
  double tau = 0.03;
  double penalty = -10.0;
  int epochs = 1;
  std::uint64_t seed = 0;
  int threads = 1;
};
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE_WITH_DEFAULT(SampleArgs, map, out, n, r,
                                                oversample, tau, penalty, epochs,
                                                seed, threads)

struct TrainArgs {
  std::string scene;
  std::string rankings;
  std::string out;
  std::string trace;
  std::string scorer = "tabular";
  int epochs = 500;
  double lr = 0.05;
  int batch_size = 0;  // 0 = full batch
  std::string optimizer = "adam";
  std::uint64_t seed = 0;
  int threads = 1;
};
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE_WITH_DEFAULT(TrainArgs, scene, rankings, out,
                                                trace, scorer, epochs, lr,
                                                batch_size, optimizer, seed,
                                                threads)

struct RecoverArgs {
  std::string scorer;
  std::string truth;
  std::string out;
  std::string scorer_kind = "auto";
  std::string scores_out;
};
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE_WITH_DEFAULT(RecoverArgs, scorer, truth, out,
                                                scorer_kind, scores_out)

struct EvalArgs {
  std::string pred;
  std::string truth;
  std::string out;
  std::string orientation = "depth";
  std::size_t pairs = kDefaultEvalPairs;
  std::size_t ranking_sets = kDefaultRankingSets;
  std::size_t ranking_size = kDefaultRankingSetSize;
  double capacity = 0.0;
  bool align = true;
  std::uint64_t seed = 0;
  std::string model = "model";
  std::string dataset = "dataset";
};
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE_WITH_DEFAULT(EvalArgs, pred, truth, out,
                                                orientation, pairs, ranking_sets,
                                                ranking_size, capacity, align,
                                                seed, model, dataset)

template <typename T>
T ParseNumber(std::string_view tok, const std::string& what) {
  T v{};
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (tok.empty() || ec != std::errc() || ptr != tok.data() + tok.size()) {
    throw UsageError("bad " + what + " '" + std::string(tok) + "'");
  }
  return v;
}

// "HxW".
std::pair<int, int> ParseSize(const std::string& s) {
  const auto x = s.find('x');
  if (x == std::string::npos) throw UsageError("size must look like HxW, got '" + s + "'");
  return {ParseNumber<int>(std::string_view(s).substr(0, x), "size"),
          ParseNumber<int>(std::string_view(s).substr(x + 1), "size")};
}

// "min:max".
std::pair<double, double> ParseRange(const std::string& s) {
  const auto c = s.find(':');
  if (c == std::string::npos) throw UsageError("range must look like MIN:MAX, got '" + s + "'");
  return {ParseNumber<double>(std::string_view(s).substr(0, c), "range"),
          ParseNumber<double>(std::string_view(s).substr(c + 1), "range")};
}

Endian ParseEndian(const std::string& s) {
  if (s == "little") return Endian::kLittle;
  if (s == "big") return Endian::kBig;
  throw UsageError("endian must be 'little' or 'big'");
}

std::string FormatDouble(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ptr);
}

void WriteManifest(const std::string& output, const std::string& subcommand,
                   const json& params) {
  json manifest = {{"tool", "plrank"},
                   {"version", PLRANK_VERSION},
                   {"subcommand", subcommand},
                   {"seed", params.value("seed", std::uint64_t{0})},
                   {"params", params}};
  WriteFileBytes(output + ".manifest.json", manifest.dump(2) + "\n");
}

// Flag wins over PLRANK_SEED, which wins over 0.
std::uint64_t ResolveSeed(const CLI::Option* flag, std::uint64_t flag_value) {
  if (flag->count() > 0) return flag_value;
  if (const char* env = std::getenv(kSeedEnvVar); env != nullptr && *env) {
    return ParseNumber<std::uint64_t>(env, std::string(kSeedEnvVar) + " value");
  }
  return 0;
}

void RequireOut(const std::string& out) {
  if (out.empty()) throw UsageError("--out is required");
}

void RunGenerate(const GenerateArgs& a, std::ostream& out) {
  RequireOut(a.out);
  const auto kind = ParseSceneKind(a.kind);
  if (!kind) throw UsageError("unknown scene kind '" + a.kind + "'");
  SceneSpec spec;
  spec.kind = *kind;
  std::tie(spec.height, spec.width) = ParseSize(a.size);
  std::tie(spec.depth_min, spec.depth_max) = ParseRange(a.range);
  spec.seed = a.seed;
  const Endian endian = ParseEndian(a.endian);
  const DepthMap map = GenerateScene(spec);
  WritePfm(map, a.out, endian);
  WriteManifest(a.out, "generate", a);
  out << "wrote " << a.out << " (" << map.height() << "x" << map.width() << ", "
      << map.CountValid() << " valid)\n";
}

void RunSample(const SampleArgs& a, std::ostream& out) {
  RequireOut(a.out);
  SamplerConfig cfg;
  cfg.ranking_size = a.n;
  cfg.rankings_per_image = a.r;
  cfg.oversample_factor = a.oversample;
  cfg.tau = a.tau;
  cfg.penalty = a.penalty;
  cfg.num_threads = a.threads;
  cfg.Validate();
  if (a.epochs < 1) throw UsageError("--epochs must be at least 1");
  const DepthMap map = ReadPfm(a.map);
  Rng rng(a.seed);
  std::vector<std::vector<RankingSample>> epochs;
  for (int e = 0; e < a.epochs; ++e) epochs.push_back(SampleRankings(map, cfg, rng));
  WriteRankingsFile(a.out, epochs);
  WriteManifest(a.out, "sample", a);
  out << "wrote " << a.epochs * a.r << " rankings of size " << a.n << " to "
      << a.out << "\n";
}

void CheckSamplesFitScene(const std::vector<std::vector<RankingSample>>& blocks,
                          const DepthMap& scene) {
  for (const auto& block : blocks) {
    for (const RankingSample& s : block) {
      for (const Location& l : s.locations) {
        if (!scene.InBounds(l) || !scene.valid(l)) {
          throw FormatError("ranking location (" + std::to_string(l.row) + "," +
                            std::to_string(l.col) +
                            ") is not a valid pixel of the scene");
        }
      }
    }
  }
}

template <PixelScorer S>
TrainResult<S> TrainOnBlocks(S scorer,
                             const std::vector<std::vector<RankingSample>>& blocks,
                             const TrainConfig& cfg) {
  if (blocks.size() == 1) {
    return Train(std::move(scorer), std::span<const RankingSample>(blocks.front()), cfg);
  }
  return Train(
      std::move(scorer),
      EpochSamples([&blocks](int epoch) { return blocks[epoch % blocks.size()]; }),
      cfg);
}

void RunTrain(const TrainArgs& a, std::ostream& out) {
  RequireOut(a.out);
  TrainConfig cfg;
  cfg.epochs = a.epochs;
  cfg.learning_rate = a.lr;
  if (a.batch_size < 0) throw UsageError("--batch-size must be >= 0");
  cfg.batch_size = a.batch_size == 0 ? kFullBatch : a.batch_size;
  if (a.optimizer == "adam") {
    cfg.optimizer = OptimizerKind::kAdam;
  } else if (a.optimizer == "sgd") {
    cfg.optimizer = OptimizerKind::kSgd;
  } else {
    throw UsageError("optimizer must be 'adam' or 'sgd'");
  }
  if (a.scorer != "tabular" && a.scorer != "linear") {
    throw UsageError("scorer must be 'tabular' or 'linear'");
  }
  cfg.seed = a.seed;
  cfg.num_threads = a.threads;
  cfg.Validate();

  const DepthMap scene = ReadPfm(a.scene);
  const auto blocks = ReadRankingsFile(a.rankings);
  CheckSamplesFitScene(blocks, scene);
  const std::string trace_path = a.trace.empty() ? a.out + ".nll.csv" : a.trace;

  std::vector<double> trace;
  if (a.scorer == "tabular") {
    auto result = TrainOnBlocks(TabularScorer(scene.height(), scene.width()), blocks, cfg);
    WriteTabularScorer(result.scorer, a.out);
    trace = std::move(result.nll_trace);
  } else {
    auto result =
        TrainOnBlocks(LinearFeatureScorer(scene.height(), scene.width()), blocks, cfg);
    WriteLinearScorer(result.scorer, a.out);
    trace = std::move(result.nll_trace);
  }
  WriteFileBytes(trace_path, FormatNllTraceCsv(trace));
  WriteManifest(a.out, "train", a);
  out << "trained " << a.scorer << " scorer for " << trace.size() - 1
      << " epochs: mean NLL " << trace.front() << " -> " << trace.back() << "\n";
}

Grid LoadScoreGrid(const RecoverArgs& a, const DepthMap& truth) {
  std::string kind = a.scorer_kind;
  if (kind == "auto") {
    const std::string bytes = ReadFileBytes(a.scorer);
    kind = bytes.rfind("Pf", 0) == 0 ? "tabular" : "linear";
  }
  if (kind == "tabular") {
    TabularScorer scorer = ReadTabularScorer(a.scorer);
    if (scorer.height() != truth.height() || scorer.width() != truth.width()) {
      throw FormatError("scorer grid does not match the ground-truth size");
    }
    return scorer.ScoreGrid();
  }
  if (kind == "linear") {
    return ReadLinearScorer(a.scorer, truth.height(), truth.width()).ScoreGrid();
  }
  throw UsageError("scorer kind must be 'auto', 'tabular' or 'linear'");
}

void RunRecover(const RecoverArgs& a, std::ostream& out) {
  RequireOut(a.out);
  const DepthMap truth = ReadPfm(a.truth);
  const Grid scores = LoadScoreGrid(a, truth);
  const AffineFit fit = FitAffine(scores, truth);
  const Grid recovered = RecoverDepth(scores, fit);

  std::vector<float> values(recovered.values().begin(), recovered.values().end());
  WritePfm(DepthMap(truth.height(), truth.width(), std::move(values),
                    {truth.mask().begin(), truth.mask().end()}),
           a.out);
  if (!a.scores_out.empty()) {
    PfmImage image{scores.height(), scores.width(),
                   {scores.values().begin(), scores.values().end()},
                   Endian::kLittle};
    WritePfmImage(image, a.scores_out);
  }
  WriteFileBytes(a.out + ".fit.txt", "scale " + FormatDouble(fit.scale) + "\nshift " +
                                         FormatDouble(fit.shift) + "\n");
  WriteManifest(a.out, "recover", a);
  out << "fit scale " << fit.scale << " shift " << fit.shift << "; wrote " << a.out
      << "\n";
}

void RunEval(const EvalArgs& a, std::ostream& out) {
  RequireOut(a.out);
  Orientation orientation;
  if (a.orientation == "depth") {
    orientation = Orientation::kLowerIsCloser;
  } else if (a.orientation == "scores") {
    orientation = Orientation::kHigherIsCloser;
  } else {
    throw UsageError("orientation must be 'depth' or 'scores'");
  }
  const PfmImage image = ReadPfmImage(a.pred);
  const DepthMap truth = ReadPfm(a.truth);
  if (image.height != truth.height() || image.width != truth.width()) {
    throw FormatError("prediction and ground truth differ in size");
  }
  Prediction pred{Grid(image.height, image.width,
                       std::vector<double>(image.values.begin(), image.values.end())),
                  orientation};
  EvalOptions options;
  options.pairs = a.pairs;
  options.ranking_sets = a.ranking_sets;
  options.ranking_size = a.ranking_size;
  options.max_capacity = a.capacity;
  options.align = a.align;
  Rng rng(a.seed);
  EvalReport report = Evaluate(pred, truth, options, rng);
  report.model = a.model;
  report.dataset = a.dataset;
  const std::span<const EvalReport> reports(&report, 1);
  WriteFileBytes(a.out, FormatReportsCsv(reports));
  WriteManifest(a.out, "eval", a);
  out << FormatReportsTable(reports);
}

void Dispatch(const std::string& subcommand, const json& params, std::ostream& out) {
  if (subcommand == "generate") {
    RunGenerate(params.get<GenerateArgs>(), out);
  } else if (subcommand == "sample") {
    RunSample(params.get<SampleArgs>(), out);
  } else if (subcommand == "train") {
    RunTrain(params.get<TrainArgs>(), out);
  } else if (subcommand == "recover") {
    RunRecover(params.get<RecoverArgs>(), out);
  } else if (subcommand == "eval") {
    RunEval(params.get<EvalArgs>(), out);
  } else {
    throw FormatError("manifest names unknown subcommand '" + subcommand + "'");
  }
}

void RunReplay(const std::string& manifest_path, std::ostream& out) {
  json manifest;
  try {
    manifest = json::parse(ReadFileBytes(manifest_path));
    Dispatch(manifest.at("subcommand").get<std::string>(), manifest.at("params"), out);
  } catch (const json::exception& e) {
    throw FormatError("bad manifest '" + manifest_path + "': " + e.what());
  }
}

}  // namespace

int Run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Plackett-Luce listwise depth ranking toolkit", "plrank"};
  app.set_version_flag("--version", PLRANK_VERSION);
  app.require_subcommand(1);

  GenerateArgs gen;
  std::uint64_t gen_seed = 0;
  auto* generate = app.add_subcommand("generate", "Generate a synthetic depth scene");
  generate->add_option("--kind", gen.kind, "ramp-h | ramp-v | bowl | steps | random-smooth")
      ->capture_default_str();
  generate->add_option("--size", gen.size, "HxW")->capture_default_str();
  generate->add_option("--range", gen.range, "MIN:MAX depth")->capture_default_str();
  auto* gen_seed_opt = generate->add_option("--seed", gen_seed, "random seed");
  generate->add_option("--out", gen.out, "output PFM path")->required();
  generate->add_option("--endian", gen.endian, "little | big")->capture_default_str();

  SampleArgs smp;
  std::uint64_t smp_seed = 0;
  auto* sample = app.add_subcommand("sample", "Sample informative rankings from a depth map");
  sample->add_option("map", smp.map, "ground-truth PFM")->required();
  sample->add_option("--out", smp.out, "output rankings file")->required();
  sample->add_option("--n", smp.n, "ranking size")->capture_default_str();
  sample->add_option("--r", smp.r, "rankings per epoch")->capture_default_str();
  sample->add_option("--oversample", smp.oversample, "candidate factor N")
      ->capture_default_str();
  sample->add_option("--tau", smp.tau, "near-equal ratio tolerance")->capture_default_str();
  sample->add_option("--penalty", smp.penalty, "penalty per near-equal pair")
      ->capture_default_str();
  sample->add_option("--epochs", smp.epochs, "number of epoch blocks")->capture_default_str();
  auto* smp_seed_opt = sample->add_option("--seed", smp_seed, "random seed");
  sample->add_option("--threads", smp.threads, "worker cap")->capture_default_str();

  TrainArgs trn;
  std::uint64_t trn_seed = 0;
  auto* train = app.add_subcommand("train", "Fit a scorer by PL maximum likelihood");
  train->add_option("scene", trn.scene, "ground-truth PFM (defines the grid)")->required();
  train->add_option("rankings", trn.rankings, "rankings file")->required();
  train->add_option("--out", trn.out, "output scorer file")->required();
  train->add_option("--trace", trn.trace, "NLL trace CSV (default <out>.nll.csv)");
  train->add_option("--scorer", trn.scorer, "tabular | linear")->capture_default_str();
  train->add_option("--epochs", trn.epochs, "training epochs")->capture_default_str();
  train->add_option("--lr", trn.lr, "learning rate")->capture_default_str();
  train->add_option("--batch-size", trn.batch_size, "0 = full batch")->capture_default_str();
  train->add_option("--optimizer", trn.optimizer, "adam | sgd")->capture_default_str();
  auto* trn_seed_opt = train->add_option("--seed", trn_seed, "random seed");
  train->add_option("--threads", trn.threads, "worker cap")->capture_default_str();

  RecoverArgs rec;
  auto* recover = app.add_subcommand("recover", "Recover metric depth from a trained scorer");
  recover->add_option("scorer", rec.scorer, "trained scorer file")->required();
  recover->add_option("truth", rec.truth, "ground-truth PFM used for the affine fit")
      ->required();
  recover->add_option("--out", rec.out, "recovered depth PFM")->required();
  recover->add_option("--scorer-kind", rec.scorer_kind, "auto | tabular | linear")
      ->capture_default_str();
  recover->add_option("--scores-out", rec.scores_out, "also write raw scores as PFM");

  EvalArgs ev;
  std::uint64_t ev_seed = 0;
  auto* eval = app.add_subcommand("eval", "Evaluate a prediction against ground truth");
  eval->add_option("pred", ev.pred, "prediction PFM")->required();
  eval->add_option("truth", ev.truth, "ground-truth PFM")->required();
  eval->add_option("--out", ev.out, "report CSV")->required();
  eval->add_option("--orientation", ev.orientation, "depth | scores")->capture_default_str();
  eval->add_option("--pairs", ev.pairs, "location pairs for ordinal error")
      ->capture_default_str();
  eval->add_option("--ranking-sets", ev.ranking_sets, "ranking sets for nDCG")
      ->capture_default_str();
  eval->add_option("--ranking-size", ev.ranking_size, "size of each ranking set")
      ->capture_default_str();
  eval->add_option("--capacity", ev.capacity, "max depth capacity (0 = max truth)")
      ->capture_default_str();
  eval->add_flag("--align,!--no-align", ev.align, "least-squares scale/shift before RMSE");
  auto* ev_seed_opt = eval->add_option("--seed", ev_seed, "random seed");
  eval->add_option("--model", ev.model, "model name in the report")->capture_default_str();
  eval->add_option("--dataset", ev.dataset, "dataset name in the report")
      ->capture_default_str();

  std::string manifest_path;
  auto* replay = app.add_subcommand("replay", "Re-run a subcommand from its manifest");
  replay->add_option("manifest", manifest_path, "manifest JSON")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*generate) {
      gen.seed = ResolveSeed(gen_seed_opt, gen_seed);
      RunGenerate(gen, out);
    } else if (*sample) {
      smp.seed = ResolveSeed(smp_seed_opt, smp_seed);
      RunSample(smp, out);
    } else if (*train) {
      trn.seed = ResolveSeed(trn_seed_opt, trn_seed);
      RunTrain(trn, out);
    } else if (*recover) {
      RunRecover(rec, out);
    } else if (*eval) {
      ev.seed = ResolveSeed(ev_seed_opt, ev_seed);
      RunEval(ev, out);
    } else if (*replay) {
      RunReplay(manifest_path, out);
    }
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n" << app.help();
    return kExitUsage;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const CapacityError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const IoError& e) {
    err << "I/O error: " << e.what() << "\n";
    return kExitIo;
  } catch (const FormatError& e) {
    err << "format error: " << e.what() << "\n";
    return kExitIo;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitFailure;
  }
  return kExitOk;
}

}  // namespace plrank::cli

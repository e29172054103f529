// Copyright 2026 The JL2P Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Acceptance harness: one PASS/FAIL line per criterion. Criterion 8 (ablation
// ordering) is stochastic by nature; its failure is flagged but does not
// change the exit status.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <limits>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "jl2p/autodiff/layers.h"
#include "jl2p/autodiff/tape.h"
#include "jl2p/cli/pipeline.h"
#include "jl2p/eval/metrics.h"
#include "jl2p/model/jl2p_model.h"
#include "jl2p/pose/preprocess.h"
#include "jl2p/random.h"
#include "jl2p/synth/generator.h"
#include "jl2p/train/curriculum.h"
#include "jl2p/train/trainer.h"
#include "json.hpp"
#include "support/gradcheck.h"
#include "support/random_pose.h"

using namespace jl2p;
using ad::Tape;
using ad::Tensor;
namespace fs = std::filesystem;

namespace {

using Clock = std::chrono::steady_clock;

double Seconds(Clock::time_point since) {
  return std::chrono::duration<double>(Clock::now() - since).count();
}

std::string Fmt(const char* format, auto... args) {
  char buf[256];
  std::snprintf(buf, sizeof(buf), format, args...);
  return buf;
}

struct Outcome {
  bool pass = true;
  std::vector<std::string> notes;

  void Require(bool ok, const std::string& what) {
    if (!ok) pass = false;
    notes.push_back((ok ? "" : "!! ") + what);
  }
};

Tensor RandomTensor(ad::Shape shape, Rng& rng) {
  std::vector<double> v(ad::NumElements(shape));
  for (double& x : v) x = rng.Uniform(-2.0, 2.0);
  return Tensor(std::move(shape), std::move(v), true);
}

// ---------------------------------------------------------------------------
// 1. Gradient correctness.

constexpr int kGradTrials = 20;
constexpr double kOpTolerance = 1e-4;
constexpr double kModelTolerance = 1e-3;

Outcome GradientCorrectness() {
  Outcome out;
  const auto start = Clock::now();
  using Builder = std::function<std::pair<testing::LossBuilder, std::vector<Tensor>>(Rng&)>;
  const std::vector<std::pair<std::string, Builder>> ops = {
      {"matmul",
       [](Rng& r) {
         Tensor a = RandomTensor({3, 4}, r), b = RandomTensor({4, 2}, r);
         return std::pair{testing::LossBuilder([=](Tape& t) { return t.Sum(t.Tanh(t.MatMul(a, b))); }),
                          std::vector<Tensor>{a, b}};
       }},
      {"add/sub/mul",
       [](Rng& r) {
         Tensor a = RandomTensor({2, 3}, r), b = RandomTensor({2, 3}, r), row = RandomTensor({3}, r);
         return std::pair{testing::LossBuilder([=](Tape& t) {
                            return t.Sum(t.Mul(t.Tanh(t.Add(a, row)), t.Sub(a, b)));
                          }),
                          std::vector<Tensor>{a, b, row}};
       }},
      {"sigmoid/tanh",
       [](Rng& r) {
         Tensor a = RandomTensor({2, 3}, r), b = RandomTensor({2, 3}, r);
         return std::pair{testing::LossBuilder([=](Tape& t) {
                            return t.Sum(t.Mul(t.Sigmoid(a), t.Tanh(b)));
                          }),
                          std::vector<Tensor>{a, b}};
       }},
      {"concat/slice/stack",
       [](Rng& r) {
         Tensor v = RandomTensor({5}, r), w = RandomTensor({2}, r), row = RandomTensor({3}, r);
         return std::pair{testing::LossBuilder([=](Tape& t) {
                            Tensor c = t.Concat(std::vector<Tensor>{v, w});
                            Tensor s = t.Stack(std::vector<Tensor>{row, t.Tanh(row)});
                            return t.Add(t.Sum(t.Tanh(t.Mul(t.Slice(c, 2, 7), t.Slice(c, 0, 5)))),
                                         t.Sum(t.Mul(s, s)));
                          }),
                          std::vector<Tensor>{v, w, row}};
       }},
      {"gru_cell",
       [](Rng& r) {
         ad::ParameterSet params;
         auto p = ad::AddGru(params, "g", 3, 4, r);
         Tensor x1 = RandomTensor({3}, r), x2 = RandomTensor({3}, r), h0 = RandomTensor({4}, r);
         return std::pair{testing::LossBuilder([=](Tape& t) {
                            Tensor h = ad::GruCell(t, x1, h0, p);
                            h = ad::GruCell(t, x2, h, p);
                            return t.Sum(t.Mul(h, h));
                          }),
                          std::vector<Tensor>{p.w_ih, p.w_hh, p.b_ih, p.b_hh, x1, h0}};
       }},
      {"lstm_cell",
       [](Rng& r) {
         ad::ParameterSet params;
         auto p = ad::AddLstm(params, "l", 3, 4, r);
         Tensor x1 = RandomTensor({3}, r), x2 = RandomTensor({3}, r);
         Tensor h0 = RandomTensor({4}, r), c0 = RandomTensor({4}, r);
         return std::pair{testing::LossBuilder([=](Tape& t) {
                            auto s = ad::LstmCell(t, x1, {h0, c0}, p);
                            s = ad::LstmCell(t, x2, s, p);
                            return t.Add(t.Sum(t.Mul(s.h, s.h)), t.Sum(s.c));
                          }),
                          std::vector<Tensor>{p.w_ih, p.w_hh, p.bias, x1, h0, c0}};
       }},
      {"smooth_l1",
       [](Rng& r) {
         Tensor x = RandomTensor({6}, r), y = RandomTensor({6}, r);
         // Central differences are meaningless across the |d| = 1 kink;
         // keep every residual at least 0.01 away from it.
         for (std::size_t i = 0; i < 6; ++i) {
           while (std::abs(std::abs(x[i] - y[i]) - 1.0) < 0.01) {
             y.mutable_values()[i] = r.Uniform(-2.0, 2.0);
           }
         }
         return std::pair{testing::LossBuilder([=](Tape& t) { return t.SmoothL1(x, y); }),
                          std::vector<Tensor>{x, y}};
       }},
      {"l2_loss",
       [](Rng& r) {
         Tensor x = RandomTensor({2, 3}, r), y = RandomTensor({2, 3}, r);
         return std::pair{testing::LossBuilder([=](Tape& t) { return t.L2Loss(x, y); }),
                          std::vector<Tensor>{x, y}};
       }},
  };
  Rng rng(2024);
  for (const auto& [name, make] : ops) {
    double worst = 0.0;
    for (int trial = 0; trial < kGradTrials; ++trial) {
      auto [build, inputs] = make(rng);
      worst = std::max(worst, testing::CheckGradients(build, inputs).max_rel_error);
    }
    out.Require(worst < kOpTolerance,
                Fmt("%-18s %d trials, max rel err %.2e (tol %.0e)", name.c_str(), kGradTrials,
                    worst, kOpTolerance));
  }

  double worst = 0.0;
  for (int trial = 0; trial < kGradTrials; ++trial) {
    model::ModelConfig c;
    c.latent_dim = 4;
    c.sentence_hidden = 5;
    c.pose_hidden = 5;
    c.decoder_hidden = 6;
    c.feature_dim = 7;
    c.word_dim = 3;
    c.seed = 100 + trial;
    model::JL2PModel m(c);
    text::TokenSequence x;
    x.dim = 3;
    for (int i = 0; i < 3; ++i) {
      x.tokens.push_back("w" + std::to_string(i));
      for (int k = 0; k < 3; ++k) x.vectors.push_back(rng.Uniform(-1, 1));
    }
    std::vector<double> y(2 * 7);
    for (double& v : y) v = rng.Uniform(-1, 1);
    const auto kind = trial % 2 == 0 ? ad::LossKind::kSmoothL1 : ad::LossKind::kL2;
    auto r = testing::CheckGradients(
        [&](Tape& t) {
          return t.Add(m.ForwardCross(t, x, y, 2, kind), m.ForwardAuto(t, y, y, 2, kind));
        },
        m.parameters().All());
    worst = std::max(worst, r.max_rel_error);
  }
  out.Require(worst < kModelTolerance, Fmt("%-18s %d trials, max rel err %.2e (tol %.0e)",
                                           "full model", kGradTrials, worst, kModelTolerance));
  const double secs = Seconds(start);
  out.Require(secs < 60.0, Fmt("runtime %.1f s (limit 60 s)", secs));
  return out;
}

// ---------------------------------------------------------------------------
// 2. Smooth L1 definition.

double SmoothL1Reference(double d) {
  const double a = std::abs(d);
  return a < 1.0 ? 0.5 * a * a : a - 0.5;
}

Outcome LossDefinition() {
  Outcome out;
  double worst = 0.0;
  for (double d : {0.0, 0.25, 0.5, 0.99, 1.0, 1.01, 2.0, 10.0}) {
    for (double sign : {1.0, -1.0}) {
      Tape tape;
      const double y = 3.0;
      const double v = tape.SmoothL1(Tensor::Scalar(y + sign * d), Tensor::Scalar(y)).item();
      worst = std::max(worst, std::abs(v - SmoothL1Reference(sign * d)));
    }
  }
  out.Require(worst <= 1e-12, Fmt("grid max |loss - formula| = %.1e (tol 1e-12)", worst));

  Tape tape;
  const double below = tape.SmoothL1(Tensor::Scalar(1.0 - 1e-12), Tensor::Scalar(0.0)).item();
  const double at = tape.SmoothL1(Tensor::Scalar(1.0), Tensor::Scalar(0.0)).item();
  const double above = tape.SmoothL1(Tensor::Scalar(1.0 + 1e-12), Tensor::Scalar(0.0)).item();
  const double jump = std::max(std::abs(below - at), std::abs(above - at));
  out.Require(jump < 1e-11 && at == 0.5,
              Fmt("branch point value %.17g, max jump across it %.1e", at, jump));

  // The loss is a mean, so n * dL/dx_i is the per-element derivative.
  Rng rng(77);
  double max_grad = 0.0;
  std::vector<double> xs;
  for (double d = -20.0; d <= 20.0; d += 0.01) xs.push_back(d);
  for (int i = 0; i < 1000; ++i) xs.push_back(rng.Uniform(-1e6, 1e6));
  for (double d : {-1.0, 1.0, 0.0, 0.99, 1.01, -1.01}) xs.push_back(d);
  Tensor x(ad::Shape{xs.size()}, xs, true);
  Tape g;
  g.Backward(g.SmoothL1(x, Tensor::Zeros({xs.size()})));
  for (double v : x.grad()) max_grad = std::max(max_grad, std::abs(v) * xs.size());
  out.Require(max_grad <= 1.0 + 1e-12,
              Fmt("max per-element |gradient| %.15g over %zu points", max_grad, xs.size()));
  return out;
}

// ---------------------------------------------------------------------------
// 3. Curriculum schedule, observed through the trainer.

train::SplitCorpus StubPairs(std::size_t frames, std::size_t f, std::size_t k) {
  Rng rng(5);
  text::WordEmbeddingTable table(k);
  auto make = [&](std::size_t i) {
    train::TrainingPair p;
    p.clip_index = i;
    p.sentence = i % 2 ? "walk" : "run fast";
    p.tokens = text::EmbedSentence(p.sentence, table);
    p.frames = frames;
    p.features.resize(frames * f);
    for (double& v : p.features) v = rng.Uniform(-1, 1);
    return p;
  };
  train::SplitCorpus out;
  for (std::size_t i = 0; i < 2; ++i) out.train.push_back(make(i));
  out.val.push_back(make(2));
  return out;
}

Outcome CurriculumStages() {
  Outcome out;
  const auto start = Clock::now();
  using V = std::vector<std::size_t>;
  const std::vector<std::pair<std::size_t, V>> cases = {
      {2, {2}}, {8, {2, 4, 8}}, {16, {2, 4, 8, 16}}, {12, {2, 4, 8, 12}},
      {100, {2, 4, 8, 16, 32, 64, 100}}};
  const auto data = StubPairs(100, 3, 2);
  for (const auto& [max_t, expected] : cases) {
    model::ModelConfig mc;
    mc.latent_dim = 2;
    mc.sentence_hidden = mc.pose_hidden = mc.decoder_hidden = 2;
    mc.feature_dim = 3;
    mc.word_dim = 2;
    model::JL2PModel stub(mc);
    train::TrainConfig tc;
    tc.max_t = max_t;
    tc.max_epochs_per_stage = 3;
    train::Trainer trainer(stub, tc);
    const auto report = trainer.Train(data);
    const V observed = report.StageLengths();
    bool resets = true;
    for (const auto& s : report.stages) {
      // The best loss is the stage's own minimum: nothing leaks across stages.
      resets = resets &&
               s.best_val_loss == *std::min_element(s.val_loss.begin(), s.val_loss.end());
    }
    std::ostringstream seq;
    for (std::size_t t : observed) seq << (seq.tellp() ? "," : "") << t;
    out.Require(observed == expected && resets,
                Fmt("max_T=%-3zu stages [%s]%s", max_t, seq.str().c_str(),
                    resets ? "" : " best loss leaked"));
  }
  // Direct check of the reset on the scheduler state.
  train::CurriculumState st({2, 4}, 1);
  st.ObserveValidation(0.5);
  st.Advance();
  const bool reset = st.best_val_loss() == std::numeric_limits<double>::infinity();
  out.Require(reset, "best validation loss is +inf after advancing a stage");
  out.notes.push_back(Fmt("runtime %.1f s", Seconds(start)));
  return out;
}

// ---------------------------------------------------------------------------
// 4. Coordinate descent coin flips.

Outcome CoordinateDescent() {
  Outcome out;
  Rng rng(9);
  text::WordEmbeddingTable table(4);
  train::SplitCorpus data;
  for (std::size_t i = 0; i < 1000; ++i) {
    train::TrainingPair p;
    p.clip_index = i;
    p.sentence = i % 3 ? "walk forward" : "wave";
    p.tokens = text::EmbedSentence(p.sentence, table);
    p.frames = 2;
    p.features.resize(2 * 5);
    for (double& v : p.features) v = rng.Uniform(-1, 1);
    (data.train.size() < 1000 ? data.train : data.val).push_back(p);
  }
  data.val = {data.train[0], data.train[1]};
  auto run = [&](double coin_prob) {
    model::ModelConfig mc;
    mc.latent_dim = 2;
    mc.sentence_hidden = mc.pose_hidden = mc.decoder_hidden = 3;
    mc.feature_dim = 5;
    mc.word_dim = 4;
    mc.seed = 1;
    model::JL2PModel m(mc);
    train::TrainConfig tc;
    tc.max_t = 2;
    tc.max_epochs_per_stage = 1;
    tc.coin_prob = coin_prob;
    tc.seed = 42;
    train::Trainer trainer(m, tc);
    return trainer.TrainStage(data, 2, train::Phase::kJoint);
  };
  const auto half = run(0.5);
  out.Require(half.cross_updates >= 450 && half.cross_updates <= 550 &&
                  half.cross_updates + half.auto_updates == 1000,
              Fmt("coin_prob 0.5: sentence path %zu / 1000 (bound [450, 550])",
                  half.cross_updates));
  const auto zero = run(0.0);
  out.Require(zero.auto_updates == 0 && zero.cross_updates == 1000,
              Fmt("coin_prob 0: sentence %zu, pose %zu", zero.cross_updates, zero.auto_updates));
  const auto one = run(1.0);
  out.Require(one.cross_updates == 0 && one.auto_updates == 1000,
              Fmt("coin_prob 1: sentence %zu, pose %zu", one.cross_updates, one.auto_updates));
  return out;
}

// ---------------------------------------------------------------------------
// 5. Preprocessing round trip.

Outcome PreprocessRoundTrip() {
  Outcome out;
  Rng rng(31);
  double worst_random = 0.0, worst_facing = 0.0;
  auto facing_check = [&](const pose::PoseSequence& seq) {
    const auto n = pose::NormalizeFacing(seq);
    for (std::size_t t = 0; t < seq.frame_count(); ++t) {
      worst_facing = std::max(worst_facing, std::abs(testing::ForwardXZ(n.pose, t).first));
    }
  };
  for (int i = 0; i < 100; ++i) {
    const auto seq = testing::RandomSequence(rng, 2 + rng.UniformInt(40));
    worst_random = std::max(worst_random, testing::MaxAbsDiff(pose::Invert(pose::Process(seq)), seq));
    facing_check(seq);
  }
  double worst_synth = 0.0;
  const auto corpus = synth::BuildCorpus(8, 11);
  std::set<synth::MotionClass> classes;
  for (const auto& c : corpus.clips) {
    classes.insert(synth::ClassOf(c.spec));
    const auto& seq = c.clip.motion;
    worst_synth = std::max(worst_synth, testing::MaxAbsDiff(pose::Invert(pose::Process(seq)), seq));
    facing_check(seq);
  }
  out.Require(worst_random <= 1e-5, Fmt("100 random sequences: max error %.2e mm", worst_random));
  out.Require(worst_synth <= 1e-5 && classes.size() == 8,
              Fmt("%zu synthetic classes: max error %.2e mm", classes.size(), worst_synth));
  out.Require(worst_facing < 1e-9, Fmt("normalized forward |x| max %.2e", worst_facing));
  return out;
}

// ---------------------------------------------------------------------------
// 6. Metric oracles.

pose::PoseSequence RandomPose(Rng& rng, std::size_t frames, const pose::Skeleton& sk) {
  std::vector<pose::Vec3> v(frames * sk.joint_count());
  for (auto& p : v) p = {rng.Uniform(-100, 100), rng.Uniform(0, 1800), rng.Uniform(-100, 100)};
  return pose::PoseSequence(sk, v, 12.5);
}

Outcome MetricOracles() {
  Outcome out;
  const auto sk = synth::ToySkeleton();
  Rng rng(61);
  double ape_err = 0.0, pck_err = 0.0, shift_err = 0.0;
  bool monotone = true;
  std::vector<double> sigmas;
  for (double s = 5.0; s <= 200.0; s += 5.0) sigmas.push_back(s);
  for (int pair = 0; pair < 50; ++pair) {
    const std::size_t frames = 1 + rng.UniformInt(20);
    const auto truth = RandomPose(rng, frames, sk);
    std::vector<pose::Vec3> noisy = truth.positions();
    const double scale = rng.Uniform(5.0, 150.0);
    for (auto& p : noisy) {
      p = p + pose::Vec3{rng.Uniform(-scale, scale), rng.Uniform(-scale, scale),
                         rng.Uniform(-scale, scale)};
    }
    const pose::PoseSequence pred(sk, noisy, 12.5);
    const std::size_t J = sk.joint_count();
    for (std::size_t j = 0; j < J; ++j) {
      double sum = 0.0;
      for (std::size_t t = 0; t < frames; ++t) {
        const double dx = noisy[t * J + j].x - truth.positions()[t * J + j].x;
        const double dy = noisy[t * J + j].y - truth.positions()[t * J + j].y;
        const double dz = noisy[t * J + j].z - truth.positions()[t * J + j].z;
        sum += std::sqrt(dx * dx + dy * dy + dz * dz);
      }
      ape_err = std::max(ape_err, std::abs(eval::Ape(pred, truth, j) - sum / frames));
    }
    const auto sweep = eval::PckSweep(pred, truth, sigmas);
    for (std::size_t k = 0; k < sigmas.size(); ++k) {
      std::size_t hits = 0;
      for (std::size_t i = 0; i < noisy.size(); ++i) {
        const double dx = noisy[i].x - truth.positions()[i].x;
        const double dy = noisy[i].y - truth.positions()[i].y;
        const double dz = noisy[i].z - truth.positions()[i].z;
        if (std::sqrt(dx * dx + dy * dy + dz * dz) <= sigmas[k]) ++hits;
      }
      pck_err = std::max(pck_err, std::abs(sweep[k] - static_cast<double>(hits) / noisy.size()));
      if (k > 0 && sweep[k] < sweep[k - 1]) monotone = false;
    }
    const pose::Vec3 off{rng.Uniform(-5000, 5000), rng.Uniform(-500, 500), rng.Uniform(-5000, 5000)};
    auto shifted = [&](const pose::PoseSequence& s) {
      std::vector<pose::Vec3> v = s.positions();
      for (auto& p : v) p = p + off;
      return pose::PoseSequence(sk, v, 12.5);
    };
    const auto a = eval::ApePerJoint(pred, truth);
    const auto b = eval::ApePerJoint(shifted(pred), shifted(truth));
    for (std::size_t j = 0; j < J; ++j) shift_err = std::max(shift_err, std::abs(a[j] - b[j]));
  }
  out.Require(ape_err <= 1e-9, Fmt("APE vs scalar loop: max diff %.1e over 50 pairs", ape_err));
  out.Require(pck_err <= 1e-9, Fmt("PCK vs scalar loop: max diff %.1e over 50 pairs", pck_err));
  out.Require(monotone, "PCK non-decreasing in sigma");
  out.Require(shift_err <= 1e-9, Fmt("APE translation invariance: max diff %.1e", shift_err));
  return out;
}

// ---------------------------------------------------------------------------
// 7 and 8. Desk-scale training runs.

constexpr std::size_t kDeskClips = 200;
constexpr std::uint64_t kDeskCorpusSeed = 7;

cli::RunConfig DeskConfig(std::uint64_t seed) {
  cli::RunConfig c;
  c.model.latent_dim = 32;
  c.model.sentence_hidden = c.model.pose_hidden = c.model.decoder_hidden = 64;
  c.model.word_dim = 64;
  c.model.seed = seed;
  c.train.max_t = synth::kDefaultDuration;
  c.train.patience = 3;
  c.train.max_epochs_per_stage = 20;
  c.train.optimizer.learning_rate = 1e-3;
  c.train.seed = seed;
  return c;
}

double CosineDistance(const std::vector<double>& a, const std::vector<double>& b) {
  double dot = 0.0, na = 0.0, nb = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    dot += a[i] * b[i];
    na += a[i] * a[i];
    nb += b[i] * b[i];
  }
  return 1.0 - dot / std::sqrt(na * nb);
}

struct DeskRun {
  cli::TrainOutcome outcome;
  double train_seconds = 0.0;
};

DeskRun TrainDesk(const std::vector<pose::Clip>& clips, const text::WordEmbeddingTable& table,
                  const cli::RunConfig& config) {
  const auto start = Clock::now();
  DeskRun run{cli::TrainOnClips(clips, table, config)};
  run.train_seconds = Seconds(start);
  return run;
}

Outcome DeskScaleLearning(const synth::SyntheticCorpus& corpus,
                          const text::WordEmbeddingTable& table,
                          std::optional<DeskRun>* keep) {
  Outcome out;
  const auto clips = corpus.Clips();
  const auto config = DeskConfig(kDeskCorpusSeed);
  const auto untrained = cli::PrepareModel(clips, table, config);
  const auto& split = untrained.prepared.split;
  const double base_train =
      cli::EvaluateClips(untrained.trained, table, clips, split.train).mean_ape;
  const double base_val = cli::EvaluateClips(untrained.trained, table, clips, split.val).mean_ape;

  DeskRun run = TrainDesk(clips, table, config);
  const auto& trained = run.outcome.trained;
  const auto& prepared = run.outcome.prepared;
  out.notes.push_back(Fmt("%zu clips, %zu train / %zu val pairs, %zu stage-epochs, %.1f s",
                          clips.size(), prepared.pairs.train.size(), prepared.pairs.val.size(),
                          run.outcome.report.TotalEpochs(), run.train_seconds));
  out.Require(run.train_seconds <= 600.0, Fmt("training time %.1f s (limit 600 s)",
                                              run.train_seconds));
  out.Require(run.outcome.report.TotalEpochs() <= 100,
              Fmt("stage-epochs %zu (limit 100)", run.outcome.report.TotalEpochs()));

  const double fit_train = cli::EvaluateClips(trained, table, clips, split.train).mean_ape;
  const double fit_val = cli::EvaluateClips(trained, table, clips, split.val).mean_ape;
  out.Require(fit_train < 0.10 * base_train,
              Fmt("(a) training APE %.1f mm vs untrained %.1f mm: ratio %.3f (< 0.10)", fit_train,
                  base_train, fit_train / base_train));
  out.Require(fit_val < 0.50 * base_val,
              Fmt("(b) held-out paraphrase APE %.1f mm vs untrained %.1f mm: ratio %.3f (< 0.50)",
                  fit_val, base_val, fit_val / base_val));

  // (c) Joint-space proximity over the held-out clips.
  std::vector<std::vector<double>> pose_z;
  std::vector<synth::MotionClass> cls;
  for (std::size_t c : split.val) {
    const auto feats = prepared.scaler.Normalize(prepared.processed[c].features());
    pose_z.push_back(trained.model.PoseEmbedding(feats, prepared.processed[c].frame_count()));
    cls.push_back(synth::ClassOf(corpus.clips[c].spec));
  }
  double paired = 0.0, mismatched = 0.0;
  std::size_t n_paired = 0, n_mismatched = 0, correct = 0, queries = 0;
  for (std::size_t i = 0; i < split.val.size(); ++i) {
    for (const auto& sentence : clips[split.val[i]].sentences) {
      const auto zx = trained.model.SentenceEmbedding(text::EmbedSentence(sentence, table));
      double best = std::numeric_limits<double>::infinity();
      std::size_t best_j = 0;
      for (std::size_t j = 0; j < pose_z.size(); ++j) {
        const double d = CosineDistance(zx, pose_z[j]);
        (j == i ? paired : mismatched) += d;
        ++(j == i ? n_paired : n_mismatched);
        if (d < best) {
          best = d;
          best_j = j;
        }
      }
      ++queries;
      if (cls[best_j] == cls[i]) ++correct;
    }
  }
  paired /= n_paired;
  mismatched /= n_mismatched;
  const double accuracy = static_cast<double>(correct) / queries;
  const double chance = 1.0 / synth::kMotionClassCount;
  out.Require(paired < mismatched,
              Fmt("(c) cosine distance paired %.3f < mismatched %.3f", paired, mismatched));
  out.Require(accuracy > 4.0 * chance,
              Fmt("(c) sentence->pose class retrieval %.3f over %zu queries (> %.3f)", accuracy,
                  queries, 4.0 * chance));

  // (d) Speed semantics: same action and template, fast vs slow.
  auto generate = [&](const std::string& s) {
    return model::GenerateAnimation(trained, table, s, synth::kDefaultDuration);
  };
  double min_ratio = std::numeric_limits<double>::infinity();
  std::size_t speed_pairs = 0;
  for (auto action : {synth::Action::kWalk, synth::Action::kRun}) {
    for (auto dir : {synth::Direction::kForward, synth::Direction::kBackward,
                     synth::Direction::kLeft, synth::Direction::kRight,
                     synth::Direction::kCircle}) {
      const auto slow = synth::GenerateSentences({action, dir, synth::Speed::kSlow});
      const auto fast = synth::GenerateSentences({action, dir, synth::Speed::kFast});
      for (std::size_t k = 0; k < slow.size(); ++k) {
        const double ls = eval::ExtractTrajectory(generate(slow[k])).PathLength();
        const double lf = eval::ExtractTrajectory(generate(fast[k])).PathLength();
        min_ratio = std::min(min_ratio, lf / ls);
        ++speed_pairs;
      }
    }
  }
  out.Require(min_ratio >= 1.5, Fmt("(d) fast/slow path length: min ratio %.2f over %zu prompt "
                                    "pairs (>= 1.5)",
                                    min_ratio, speed_pairs));

  // (e) Direction semantics: left vs right displacement along X.
  std::size_t opposite = 0, prompts = 0;
  for (auto action : {synth::Action::kWalk, synth::Action::kRun}) {
    for (auto speed : {synth::Speed::kSlow, synth::Speed::kNormal, synth::Speed::kFast}) {
      const auto left = synth::GenerateSentences({action, synth::Direction::kLeft, speed});
      const auto right = synth::GenerateSentences({action, synth::Direction::kRight, speed});
      for (std::size_t k = 0; k < left.size(); ++k) {
        const double xl = eval::ExtractTrajectory(generate(left[k])).FinalX();
        const double xr = eval::ExtractTrajectory(generate(right[k])).FinalX();
        if (xl * xr < 0.0) ++opposite;
        ++prompts;
      }
    }
  }
  out.Require(opposite >= 0.8 * prompts,
              Fmt("(e) left/right X displacement opposite on %zu / %zu prompts (>= 80%%)",
                  opposite, prompts));
  if (keep != nullptr) keep->emplace(std::move(run));
  return out;
}

struct Variant {
  const char* name;
  std::function<void(cli::RunConfig&)> apply;
};

Outcome AblationOrdering(const synth::SyntheticCorpus& corpus,
                         const text::WordEmbeddingTable& table, const DeskRun* seed7_full,
                         const fs::path& out_dir) {
  Outcome out;
  const auto clips = corpus.Clips();
  const std::vector<Variant> variants = {
      {"full", [](cli::RunConfig&) {}},
      {"no_curriculum", [](cli::RunConfig& c) { c.train.curriculum = false; }},
      {"l2_loss", [](cli::RunConfig& c) { c.train.loss = ad::LossKind::kL2; }},
      {"sequential", [](cli::RunConfig& c) {
         c.train.embedding_mode = train::EmbeddingMode::kSequential;
       }}};
  const std::vector<std::uint64_t> seeds = {7, 8, 9};
  nlohmann::ordered_json report;
  report["corpus"] = {{"clips", kDeskClips}, {"seed", kDeskCorpusSeed}};
  report["seeds"] = seeds;
  std::vector<double> means;
  for (const auto& v : variants) {
    std::vector<double> apes;
    for (std::uint64_t seed : seeds) {
      auto config = DeskConfig(seed);
      v.apply(config);
      const bool reuse = seed7_full != nullptr && seed == kDeskCorpusSeed &&
                         std::string(v.name) == "full";
      std::optional<DeskRun> fresh;
      if (!reuse) fresh.emplace(TrainDesk(clips, table, config));
      const DeskRun& run = reuse ? *seed7_full : *fresh;
      const auto& split = run.outcome.prepared.split;
      apes.push_back(cli::EvaluateClips(run.outcome.trained, table, clips, split.val).mean_ape);
    }
    double mean = 0.0;
    for (double a : apes) mean += a;
    mean /= apes.size();
    means.push_back(mean);
    report["variants"][v.name] = {{"held_out_mean_ape_mm", apes}, {"mean", mean}};
    out.notes.push_back(Fmt("%-14s held-out APE %.1f / %.1f / %.1f mm, mean %.1f", v.name,
                            apes[0], apes[1], apes[2], mean));
  }
  for (std::size_t i = 1; i < variants.size(); ++i) {
    const bool ok = means[0] <= means[i];
    report["full_le"][variants[i].name] = ok;
    out.Require(ok, Fmt("full %.1f <= %s %.1f", means[0], variants[i].name, means[i]));
  }
  report["ordering_holds"] = out.pass;
  const auto path = out_dir / "ablation_report.json";
  cli::WriteTextFile(path.string(), report.dump(2) + "\n");
  out.notes.push_back("report: " + path.string());
  return out;
}

// ---------------------------------------------------------------------------
// 9. Determinism of the file pipeline.

Outcome Determinism(const fs::path& out_dir) {
  Outcome out;
  // Both runs use the very same config, paths included (the training report
  // records the checkpoint path); outputs are snapshotted after each run.
  const fs::path dir = out_dir / "determinism";
  const std::vector<std::string> files = {"model.json", "training_report.json",
                                          "eval_report.json", "pck.csv", "ape_time.csv"};
  auto run_once = [&] {
    fs::remove_all(dir);
    cli::SynthOptions so;
    so.clips = 24;
    so.seed = 5;
    so.out = (dir / "corpus.jsonl").string();
    cli::RunSynth(so);
    cli::RunConfig c;
    c.paths.corpus = so.out;
    c.paths.out_dir = dir.string();
    c.model.latent_dim = 8;
    c.model.sentence_hidden = c.model.pose_hidden = c.model.decoder_hidden = 16;
    c.model.word_dim = 16;
    c.model.seed = 3;
    c.train.max_t = 16;
    c.train.max_epochs_per_stage = 3;
    c.train.seed = 3;
    cli::RunTrain(c);
    cli::EvalOptions eo;
    eo.checkpoint = c.CheckpointPath();
    eo.corpus = so.out;
    eo.out_dir = dir.string();
    cli::RunEval(eo);
    std::vector<std::string> contents;
    for (const auto& name : files) contents.push_back(cli::ReadTextFile((dir / name).string()));
    return contents;
  };
  const auto a = run_once();
  const auto b = run_once();
  for (std::size_t i = 0; i < files.size(); ++i) {
    out.Require(a[i] == b[i] && !a[i].empty(),
                Fmt("%-20s %zu bytes, %s", files[i].c_str(), a[i].size(),
                    a[i] == b[i] ? "identical" : "DIFFERENT"));
  }
  return out;
}

void Print(int id, const char* title, const Outcome& o, bool soft = false) {
  std::printf("%s  criterion %d: %s%s\n", o.pass ? "PASS" : "FAIL", id, title,
              !o.pass && soft ? "  [soft: flagged, not counted]" : "");
  for (const auto& n : o.notes) std::printf("        %s\n", n.c_str());
  std::fflush(stdout);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Acceptance checks"};
  std::vector<int> only;
  std::string out_dir = "acceptance_out";
  app.add_option("criteria", only, "run only these criterion numbers (1-9)");
  app.add_option("--out-dir", out_dir, "where reports and scratch files go");
  CLI11_PARSE(app, argc, argv);
  auto wanted = [&](int id) {
    return only.empty() || std::find(only.begin(), only.end(), id) != only.end();
  };
  fs::create_directories(out_dir);

  int failures = 0;
  auto run = [&](int id, const char* title, auto&& fn, bool soft = false) {
    if (!wanted(id)) return;
    Outcome o;
    try {
      o = fn();
    } catch (const std::exception& e) {
      o.Require(false, std::string("exception: ") + e.what());
    }
    Print(id, title, o, soft);
    if (!o.pass && !soft) ++failures;
  };

  run(1, "gradient correctness", GradientCorrectness);
  run(2, "smooth L1 definition", LossDefinition);
  run(3, "curriculum schedule", CurriculumStages);
  run(4, "coordinate descent coin flips", CoordinateDescent);
  run(5, "preprocessing round trip", PreprocessRoundTrip);
  run(6, "metric oracles", MetricOracles);

  std::optional<synth::SyntheticCorpus> corpus;
  const text::WordEmbeddingTable table(64);
  if (wanted(7) || wanted(8)) corpus = synth::BuildCorpus(kDeskClips, kDeskCorpusSeed);
  std::optional<DeskRun> full_seed7;
  run(7, "desk-scale learning", [&] {
    return DeskScaleLearning(*corpus, table, &full_seed7);
  });
  run(8, "ablation ordering", [&] {
    return AblationOrdering(*corpus, table, full_seed7 ? &*full_seed7 : nullptr, out_dir);
  }, /*soft=*/true);
  run(9, "determinism", [&] { return Determinism(out_dir); });

  std::printf("%s (%d hard failure%s)\n", failures == 0 ? "ALL PASS" : "FAILED", failures,
              failures == 1 ? "" : "s");
  return failures == 0 ? 0 : 1;
}

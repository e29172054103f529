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

#include "jl2p/train/trainer.h"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "jl2p/error.h"
#include "jl2p/train/curriculum.h"
#include "json.hpp"

namespace jl2p::train {
namespace {

enum class Route { kCross, kAuto };

// Excludes the pose encoder and decoder from gradient computation.
class FreezeGuard {
 public:
  FreezeGuard(ad::ParameterSet& params, bool active)
      : params_(params), active_(active) {
    if (active_) Set(false);
  }
  ~FreezeGuard() {
    if (active_) Set(true);
  }
  FreezeGuard(const FreezeGuard&) = delete;
  FreezeGuard& operator=(const FreezeGuard&) = delete;

 private:
  void Set(bool flag) {
    params_.SetRequiresGrad(model::kPoseEncoderPrefix, flag);
    params_.SetRequiresGrad(model::kDecoderPrefix, flag);
  }
  ad::ParameterSet& params_;
  bool active_;
};

}  // namespace

const char* EmbeddingModeName(EmbeddingMode mode) {
  return mode == EmbeddingMode::kJoint ? "joint" : "sequential";
}

EmbeddingMode ParseEmbeddingMode(const std::string& name) {
  if (name == "joint") return EmbeddingMode::kJoint;
  if (name == "sequential") return EmbeddingMode::kSequential;
  throw ContractError("unknown embedding mode '" + name +
                      "' (expected joint or sequential)");
}

const char* PhaseName(Phase phase) {
  switch (phase) {
    case Phase::kJoint:
      return "joint";
    case Phase::kAutoencoder:
      return "autoencoder";
    case Phase::kCrossModal:
      return "cross_modal";
  }
  return "?";
}

void TrainConfig::Validate() const {
  if (!(val_fraction > 0.0 && val_fraction < 1.0)) {
    throw ContractError("val_fraction must lie in (0, 1)");
  }
  if (!(coin_prob >= 0.0 && coin_prob <= 1.0)) {
    throw ContractError("coin_prob must lie in [0, 1]");
  }
  if (max_t < 2) throw ContractError("max_t must be >= 2");
  if (patience < 1) throw ContractError("patience must be >= 1");
  if (batch_size < 1) throw ContractError("batch_size must be >= 1");
  if (max_epochs_per_stage < 1) {
    throw ContractError("max_epochs_per_stage must be >= 1");
  }
}

std::vector<std::size_t> TrainingReport::StageLengths() const {
  std::vector<std::size_t> out;
  for (const auto& s : stages) out.push_back(s.t);
  return out;
}

std::size_t TrainingReport::TotalEpochs() const {
  std::size_t n = 0;
  for (const auto& s : stages) n += static_cast<std::size_t>(s.epochs);
  return n;
}

std::string TrainingReportToJson(const TrainingReport& report) {
  using nlohmann::ordered_json;
  const TrainConfig& c = report.config;
  ordered_json doc;
  doc["schema_version"] = kTrainingReportSchemaVersion;
  doc["seed"] = c.seed;
  doc["config"] = {
      {"curriculum", c.curriculum},
      {"loss", ad::LossKindName(c.loss)},
      {"embedding_mode", EmbeddingModeName(c.embedding_mode)},
      {"coin_prob", c.coin_prob},
      {"val_fraction", c.val_fraction},
      {"patience", c.patience},
      {"max_t", c.max_t},
      {"batch_size", c.batch_size},
      {"max_epochs_per_stage", c.max_epochs_per_stage},
      {"optimizer", ad::OptimizerKindName(c.optimizer.kind)},
      {"learning_rate", c.optimizer.learning_rate},
      {"clip_norm", c.optimizer.clip_norm},
  };
  doc["train_pairs"] = report.train_pairs;
  doc["val_pairs"] = report.val_pairs;
  doc["stage_lengths"] = report.StageLengths();
  ordered_json stages = ordered_json::array();
  for (const auto& s : report.stages) {
    stages.push_back({{"phase", PhaseName(s.phase)},
                      {"t", s.t},
                      {"epochs", s.epochs},
                      {"hit_epoch_cap", s.hit_epoch_cap},
                      {"train_loss", s.train_loss},
                      {"val_loss", s.val_loss},
                      {"best_val_loss", s.best_val_loss},
                      {"coin_flips",
                       {{"cross_modal", s.cross_updates},
                        {"autoencoder", s.auto_updates}}}});
  }
  doc["stages"] = std::move(stages);
  doc["checkpoint_path"] = report.checkpoint_path;
  return doc.dump(2) + "\n";
}

Trainer::Trainer(model::JL2PModel& model, TrainConfig config)
    : model_(model),
      config_(config),
      optimizer_(config.optimizer),
      rng_(DeriveSeed(config.seed, 0x7a11)) {
  config_.Validate();
}

double Trainer::ValidationLoss(const std::vector<TrainingPair>& pairs,
                               std::size_t t, Phase phase) const {
  if (pairs.empty()) return 0.0;
  double total = 0.0;
  for (const auto& pair : pairs) {
    const std::size_t steps = std::min(t, pair.frames);
    ad::Tape tape(ad::Tape::Mode::kInference);
    const ad::Tensor loss =
        phase == Phase::kAutoencoder
            ? model_.ForwardAuto(tape, pair.features, pair.features, steps,
                                 config_.loss)
            : model_.ForwardCross(tape, pair.tokens, pair.features, steps,
                                  config_.loss);
    total += loss.item();
  }
  return total / static_cast<double>(pairs.size());
}

double Trainer::TrainEpoch(const SplitCorpus& data, std::size_t t, Phase phase,
                           StageReport& stage) {
  std::vector<std::size_t> order(data.train.size());
  std::iota(order.begin(), order.end(), 0);
  for (std::size_t i = order.size(); i > 1; --i) {
    std::swap(order[i - 1], order[rng_.UniformInt(i)]);
  }

  bool use_sentence = false;
  bool use_pose = false;
  std::size_t pending = 0;
  auto flush = [&] {
    std::vector<ad::Tensor> active;
    if (use_sentence) {
      auto p = model_.SentenceEncoderParams();
      active.insert(active.end(), p.begin(), p.end());
    }
    if (use_pose) {
      auto p = model_.PoseEncoderParams();
      active.insert(active.end(), p.begin(), p.end());
    }
    if (phase != Phase::kCrossModal) {
      auto p = model_.DecoderParams();
      active.insert(active.end(), p.begin(), p.end());
    }
    if (pending > 1) {
      const double inv = 1.0 / static_cast<double>(pending);
      for (auto& p : active) {
        for (double& g : p.mutable_grad()) g *= inv;
      }
    }
    optimizer_.Step(active);
    model_.parameters().ZeroGrad();
    use_sentence = use_pose = false;
    pending = 0;
  };

  double total = 0.0;
  for (std::size_t idx : order) {
    const TrainingPair& pair = data.train[idx];
    Route route = Route::kCross;
    if (phase == Phase::kJoint) {
      route = rng_.Bernoulli(config_.coin_prob) ? Route::kAuto : Route::kCross;
    } else if (phase == Phase::kAutoencoder) {
      route = Route::kAuto;
    }
    const std::size_t steps = std::min(t, pair.frames);
    ad::Tape tape;
    const ad::Tensor loss =
        route == Route::kAuto
            ? model_.ForwardAuto(tape, pair.features, pair.features, steps,
                                 config_.loss)
            : model_.ForwardCross(tape, pair.tokens, pair.features, steps,
                                  config_.loss);
    if (!std::isfinite(loss.item())) {
      throw Error("non-finite training loss at t=" + std::to_string(t) +
                  " on sentence \"" + pair.sentence + "\"");
    }
    tape.Backward(loss);
    total += loss.item();
    if (route == Route::kAuto) {
      ++stage.auto_updates;
      use_pose = true;
    } else {
      ++stage.cross_updates;
      use_sentence = true;
    }
    if (++pending == config_.batch_size) flush();
  }
  if (pending > 0) flush();
  return data.train.empty() ? 0.0 : total / static_cast<double>(data.train.size());
}

StageReport Trainer::TrainStage(const SplitCorpus& data, std::size_t t,
                                Phase phase) {
  if (t > config_.max_t) {
    throw ContractError("stage length " + std::to_string(t) + " exceeds max_t " +
                        std::to_string(config_.max_t));
  }
  if (data.train.empty()) throw ContractError("no training pairs");

  FreezeGuard freeze(model_.parameters(), phase == Phase::kCrossModal);

  StageReport stage;
  stage.phase = phase;
  stage.t = t;
  CurriculumState stop_rule({t}, config_.patience);
  for (int epoch = 0; epoch < config_.max_epochs_per_stage; ++epoch) {
    stage.train_loss.push_back(TrainEpoch(data, t, phase, stage));
    const double val = ValidationLoss(data.val, t, phase);
    stage.val_loss.push_back(val);
    ++stage.epochs;
    const bool stop = stop_rule.ObserveValidation(val);
    stage.best_val_loss = stop_rule.best_val_loss();
    if (stop) break;
    if (stage.epochs == config_.max_epochs_per_stage) stage.hit_epoch_cap = true;
  }
  return stage;
}

TrainingReport Trainer::Train(const SplitCorpus& data) {
  TrainingReport report;
  report.config = config_;
  report.train_pairs = data.train.size();
  report.val_pairs = data.val.size();

  std::vector<Phase> phases;
  if (config_.embedding_mode == EmbeddingMode::kJoint) {
    phases = {Phase::kJoint};
  } else {
    phases = {Phase::kAutoencoder, Phase::kCrossModal};
  }
  for (Phase phase : phases) {
    for (std::size_t t : CurriculumSchedule(config_.max_t, config_.curriculum)) {
      report.stages.push_back(TrainStage(data, t, phase));
    }
  }
  return report;
}

}  // namespace jl2p::train

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

#ifndef JL2P_TRAIN_TRAINER_H_
#define JL2P_TRAIN_TRAINER_H_

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "jl2p/autodiff/optimizer.h"
#include "jl2p/autodiff/tape.h"
#include "jl2p/model/jl2p_model.h"
#include "jl2p/random.h"
#include "jl2p/train/dataset.h"

namespace jl2p::train {

enum class EmbeddingMode { kJoint, kSequential };

const char* EmbeddingModeName(EmbeddingMode mode);
EmbeddingMode ParseEmbeddingMode(const std::string& name);

struct TrainConfig {
  bool curriculum = true;
  ad::LossKind loss = ad::LossKind::kSmoothL1;
  EmbeddingMode embedding_mode = EmbeddingMode::kJoint;
  // Probability that a pair is routed through the pose encoder.
  double coin_prob = 0.5;
  double val_fraction = 0.2;
  int patience = 1;
  std::size_t max_t = 32;
  std::size_t batch_size = 1;
  int max_epochs_per_stage = 50;
  std::uint64_t seed = 0;
  ad::OptimizerOptions optimizer;

  void Validate() const;
};

// Which encoder feeds the decoder, and which parameters are updated.
enum class Phase {
  kJoint,        // coin flip per pair; both encoders and the decoder
  kAutoencoder,  // pose encoder path only
  kCrossModal,   // sentence encoder path, decoder and pose encoder frozen
};

const char* PhaseName(Phase phase);

struct StageReport {
  Phase phase = Phase::kJoint;
  std::size_t t = 0;
  int epochs = 0;
  std::vector<double> train_loss;
  std::vector<double> val_loss;
  std::size_t cross_updates = 0;
  std::size_t auto_updates = 0;
  double best_val_loss = 0.0;
  bool hit_epoch_cap = false;
};

inline constexpr int kTrainingReportSchemaVersion = 1;

struct TrainingReport {
  TrainConfig config;
  std::vector<StageReport> stages;
  std::size_t train_pairs = 0;
  std::size_t val_pairs = 0;
  std::string checkpoint_path;

  std::vector<std::size_t> StageLengths() const;
  std::size_t TotalEpochs() const;
};

// Pretty-printed JSON; contains no timing data.
std::string TrainingReportToJson(const TrainingReport& report);

// Curriculum training with per-pair coordinate descent. Single-threaded; the
// same seed, data and model initialization give bit-identical parameters.
class Trainer {
 public:
  Trainer(model::JL2PModel& model, TrainConfig config);

  TrainingReport Train(const SplitCorpus& data);

  // Runs epochs at horizon t until the stop rule or the epoch cap.
  StageReport TrainStage(const SplitCorpus& data, std::size_t t, Phase phase);

  // Mean loss over `pairs` at horizon min(t, clip length); the sentence path
  // except in the autoencoder phase.
  double ValidationLoss(const std::vector<TrainingPair>& pairs, std::size_t t,
                        Phase phase) const;

  const TrainConfig& config() const { return config_; }

 private:
  double TrainEpoch(const SplitCorpus& data, std::size_t t, Phase phase,
                    StageReport& stage);

  model::JL2PModel& model_;
  TrainConfig config_;
  ad::Optimizer optimizer_;
  Rng rng_;
};

}  // namespace jl2p::train

#endif  // JL2P_TRAIN_TRAINER_H_

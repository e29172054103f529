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

#ifndef JL2P_MODEL_TRAINED_MODEL_H_
#define JL2P_MODEL_TRAINED_MODEL_H_

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>

#include "jl2p/model/jl2p_model.h"
#include "jl2p/pose/feature_scaler.h"
#include "jl2p/pose/pose_sequence.h"
#include "jl2p/pose/preprocess.h"
#include "jl2p/text/embedding_table.h"

namespace jl2p::model {

inline constexpr int kModelCheckpointSchemaVersion = 1;

// A model plus everything needed to turn its outputs back into poses and to
// check a corpus against it.
struct TrainedModel {
  JL2PModel model;
  pose::Skeleton skeleton;
  double fps = 12.5;
  pose::FeatureScaler scaler;
  // Empty means hash-fallback vectors of dimension model.config().word_dim.
  std::string embeddings_path;
  std::uint64_t split_seed = 0;
  double val_fraction = 0.2;
};

// Layout: the parameter checkpoint document of ad::SaveParameters with an
// extra "header" object holding schema_version, model_config, layout
// (J, joint_names, root_index, F, K, fps), scaler, embeddings and split.
void SaveModelCheckpoint(const TrainedModel& trained, std::ostream& out);
TrainedModel LoadModelCheckpoint(std::istream& in);
void SaveModelCheckpointFile(const TrainedModel& trained, const std::string& path);
TrainedModel LoadModelCheckpointFile(const std::string& path);

// Throws ContractError naming both layouts when the skeletons differ.
void CheckCompatible(const TrainedModel& trained, const pose::Skeleton& skeleton);

// Embedding table implied by the checkpoint (file or hash fallback).
text::WordEmbeddingTable LoadEmbeddings(const TrainedModel& trained);

// Sentence -> absolute pose sequence of `steps` frames starting from
// `initial`.
pose::PoseSequence GenerateAnimation(const TrainedModel& trained,
                                     const text::WordEmbeddingTable& table,
                                     std::string_view sentence,
                                     std::size_t steps,
                                     const pose::RootPose& initial = {});

}  // namespace jl2p::model

#endif  // JL2P_MODEL_TRAINED_MODEL_H_

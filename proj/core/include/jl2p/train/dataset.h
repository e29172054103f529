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

#ifndef JL2P_TRAIN_DATASET_H_
#define JL2P_TRAIN_DATASET_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "jl2p/pose/corpus.h"
#include "jl2p/pose/feature_scaler.h"
#include "jl2p/pose/preprocess.h"
#include "jl2p/text/embedding_table.h"

namespace jl2p::train {

// Clip indices on each side of the held-out split.
struct ClipSplit {
  std::vector<std::size_t> train;
  std::vector<std::size_t> val;
};

// Seeded shuffle of clip indices, then the first round(n * val_fraction)
// (at least 1, at most n - 1) go to validation. Needs >= 5 clips.
ClipSplit SplitData(std::size_t clip_count, double val_fraction,
                    std::uint64_t seed);

struct TrainingPair {
  std::size_t clip_index = 0;
  std::string sentence;
  text::TokenSequence tokens;
  // Standardized features, row-major frames x F.
  std::vector<double> features;
  std::size_t frames = 0;
};

struct SplitCorpus {
  std::vector<TrainingPair> train;
  std::vector<TrainingPair> val;
};

struct PreparedCorpus {
  ClipSplit split;
  SplitCorpus pairs;
  pose::FeatureScaler scaler;
  // Unscaled features for every clip, indexed like the corpus.
  std::vector<pose::ProcessedSequence> processed;
};

// Processes every clip, fits the scaler on the training clips only and
// expands each clip into one pair per sentence. All clips must share one
// skeleton (ContractError otherwise).
PreparedCorpus PrepareCorpus(std::span<const pose::Clip> clips,
                             const text::WordEmbeddingTable& table,
                             double val_fraction, std::uint64_t seed);

}  // namespace jl2p::train

#endif  // JL2P_TRAIN_DATASET_H_

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

#include "jl2p/train/dataset.h"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "jl2p/error.h"
#include "jl2p/random.h"

namespace jl2p::train {

ClipSplit SplitData(std::size_t clip_count, double val_fraction,
                    std::uint64_t seed) {
  if (clip_count < 5) {
    throw ContractError("need at least 5 clips to split, got " +
                        std::to_string(clip_count));
  }
  if (!(val_fraction > 0.0 && val_fraction < 1.0)) {
    throw ContractError("val_fraction must lie in (0, 1)");
  }
  std::vector<std::size_t> order(clip_count);
  std::iota(order.begin(), order.end(), 0);
  Rng rng(DeriveSeed(seed, 0x5911));
  for (std::size_t i = clip_count - 1; i > 0; --i) {
    std::swap(order[i], order[rng.UniformInt(i + 1)]);
  }
  auto n_val = static_cast<std::size_t>(
      std::llround(static_cast<double>(clip_count) * val_fraction));
  n_val = std::clamp<std::size_t>(n_val, 1, clip_count - 1);
  ClipSplit split;
  split.val.assign(order.begin(), order.begin() + n_val);
  split.train.assign(order.begin() + n_val, order.end());
  std::sort(split.val.begin(), split.val.end());
  std::sort(split.train.begin(), split.train.end());
  return split;
}

PreparedCorpus PrepareCorpus(std::span<const pose::Clip> clips,
                             const text::WordEmbeddingTable& table,
                             double val_fraction, std::uint64_t seed) {
  PreparedCorpus out;
  out.split = SplitData(clips.size(), val_fraction, seed);
  for (const auto& clip : clips) {
    if (!(clip.motion.skeleton() == clips.front().motion.skeleton())) {
      throw ContractError("clip '" + clip.id + "' uses a different skeleton: " +
                          clip.motion.skeleton().Describe() + " vs " +
                          clips.front().motion.skeleton().Describe());
    }
    out.processed.push_back(pose::Process(clip.motion));
  }
  std::vector<pose::ProcessedSequence> train_seqs;
  for (std::size_t i : out.split.train) train_seqs.push_back(out.processed[i]);
  out.scaler = pose::FeatureScaler::Fit(train_seqs);

  auto expand = [&](const std::vector<std::size_t>& indices,
                    std::vector<TrainingPair>& dst) {
    for (std::size_t i : indices) {
      const auto& proc = out.processed[i];
      auto features = out.scaler.Normalize(proc.features());
      for (const auto& sentence : clips[i].sentences) {
        TrainingPair pair;
        pair.clip_index = i;
        pair.sentence = sentence;
        pair.tokens = text::EmbedSentence(sentence, table);
        pair.features = features;
        pair.frames = proc.frame_count();
        dst.push_back(std::move(pair));
      }
    }
  };
  expand(out.split.train, out.pairs.train);
  expand(out.split.val, out.pairs.val);
  return out;
}

}  // namespace jl2p::train

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

#ifndef JL2P_CLI_PIPELINE_H_
#define JL2P_CLI_PIPELINE_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "jl2p/cli/run_config.h"
#include "jl2p/eval/eval_report.h"
#include "jl2p/model/trained_model.h"
#include "jl2p/pose/corpus.h"
#include "jl2p/text/embedding_table.h"
#include "jl2p/train/dataset.h"
#include "jl2p/train/trainer.h"

namespace jl2p::cli {

inline constexpr int kAnimationSchemaVersion = 1;
inline constexpr std::size_t kDefaultGenerateSteps = 100;

// File-backed table when a path is given, otherwise hash-fallback vectors of
// dimension `word_dim`.
text::WordEmbeddingTable LoadEmbeddingTable(const std::string& path,
                                            std::size_t word_dim);

struct TrainOutcome {
  model::TrainedModel trained;
  train::TrainingReport report;
  train::PreparedCorpus prepared;
};

// Untrained model sized for `clips` (feature dim from the skeleton, word dim
// from the table), plus the prepared split. The split seed is the training
// seed.
TrainOutcome PrepareModel(std::span<const pose::Clip> clips,
                          const text::WordEmbeddingTable& table,
                          const RunConfig& config);

// PrepareModel followed by training.
TrainOutcome TrainOnClips(std::span<const pose::Clip> clips,
                          const text::WordEmbeddingTable& table,
                          const RunConfig& config);

// Held-out clip indices recorded by the checkpoint's split.
std::vector<std::size_t> HeldOutClips(const model::TrainedModel& trained,
                                      std::size_t clip_count);

// Generates every sentence of the selected clips at the clip's length,
// starting from the clip's own initial root pose, and scores it against the
// recording. With `self_reference` the recording is scored against itself.
eval::EvalReport EvaluateClips(const model::TrainedModel& trained,
                               const text::WordEmbeddingTable& table,
                               std::span<const pose::Clip> clips,
                               std::span<const std::size_t> indices,
                               bool self_reference = false);

std::string AnimationToJson(const pose::PoseSequence& seq,
                            const std::string& sentence);
// Columns frame,x_mm,z_mm (origin-shifted root path).
std::string TrajectoryCsv(const pose::PoseSequence& seq);

void WriteTextFile(const std::string& path, const std::string& contents);
std::string ReadTextFile(const std::string& path);

// Subcommands. Each validates its paths before doing any heavy work and
// throws jl2p::Error with a readable message on failure.
struct SynthOptions {
  std::size_t clips = 200;
  std::uint64_t seed = 7;
  std::size_t frames = 32;
  std::string out;
};
void RunSynth(const SynthOptions& options);

// Writes the checkpoint and <out_dir>/training_report.json.
train::TrainingReport RunTrain(const RunConfig& config);

struct EvalOptions {
  std::string checkpoint;
  std::string corpus;
  std::string out_dir = ".";
  bool self_reference = false;
  bool all_clips = false;  // default: the held-out split only
};
// Writes eval_report.json, pck.csv and ape_time.csv into out_dir.
eval::EvalReport RunEval(const EvalOptions& options);

struct GenerateOptions {
  std::string checkpoint;
  std::string sentence;
  long long steps = static_cast<long long>(kDefaultGenerateSteps);
  std::string out;             // animation JSON
  std::string trajectory_out;  // empty: <out minus .json>_trajectory.csv
};
pose::PoseSequence RunGenerate(const GenerateOptions& options);

}  // namespace jl2p::cli

#endif  // JL2P_CLI_PIPELINE_H_

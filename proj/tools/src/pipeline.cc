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

#include "jl2p/cli/pipeline.h"

#include <filesystem>
#include <fstream>
#include <sstream>

#include "jl2p/error.h"
#include "jl2p/eval/metrics.h"
#include "jl2p/pose/preprocess.h"
#include "jl2p/synth/generator.h"
#include "json.hpp"

namespace jl2p::cli {
namespace fs = std::filesystem;
namespace {

// Creates missing parent directories and makes sure the file can be opened
// for writing, so failures surface before any long computation.
void CheckWritable(const std::string& path) {
  if (path.empty()) throw Error("output path is empty");
  const fs::path p(path);
  if (p.has_parent_path()) {
    std::error_code ec;
    fs::create_directories(p.parent_path(), ec);
    if (ec) throw Error("cannot create directory " + p.parent_path().string() + ": " + ec.message());
  }
  std::ofstream probe(path, std::ios::app);
  if (!probe) throw Error("cannot write " + path);
}

void CheckReadable(const std::string& path, const char* what) {
  if (path.empty()) throw Error(std::string("no ") + what + " given");
  std::ifstream in(path);
  if (!in) throw Error(std::string("cannot read ") + what + " " + path);
}

std::string Join(const std::string& dir, const std::string& name) {
  return (fs::path(dir) / name).string();
}

}  // namespace

void WriteTextFile(const std::string& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot write " + path);
  out << contents;
  if (!out) throw Error("failed writing " + path);
}

std::string ReadTextFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

text::WordEmbeddingTable LoadEmbeddingTable(const std::string& path,
                                            std::size_t word_dim) {
  if (path.empty()) return text::WordEmbeddingTable(word_dim);
  return text::WordEmbeddingTable::LoadFile(path);
}

TrainOutcome PrepareModel(std::span<const pose::Clip> clips,
                          const text::WordEmbeddingTable& table,
                          const RunConfig& config) {
  config.train.Validate();
  if (clips.empty()) throw ContractError("corpus is empty");
  auto prepared = train::PrepareCorpus(clips, table, config.train.val_fraction,
                                       config.train.seed);
  const pose::Skeleton& skeleton = clips[0].motion.skeleton();
  model::ModelConfig mc = config.model;
  mc.feature_dim = pose::FeatureDim(skeleton.joint_count());
  mc.word_dim = table.dim();
  model::TrainedModel trained{model::JL2PModel(mc),
                              skeleton,
                              clips[0].motion.fps(),
                              prepared.scaler,
                              config.paths.embeddings,
                              config.train.seed,
                              config.train.val_fraction};
  train::TrainingReport report;
  report.config = config.train;
  return TrainOutcome{std::move(trained), std::move(report), std::move(prepared)};
}

TrainOutcome TrainOnClips(std::span<const pose::Clip> clips,
                          const text::WordEmbeddingTable& table,
                          const RunConfig& config) {
  TrainOutcome out = PrepareModel(clips, table, config);
  train::Trainer trainer(out.trained.model, config.train);
  out.report = trainer.Train(out.prepared.pairs);
  return out;
}

std::vector<std::size_t> HeldOutClips(const model::TrainedModel& trained,
                                      std::size_t clip_count) {
  return train::SplitData(clip_count, trained.val_fraction, trained.split_seed).val;
}

eval::EvalReport EvaluateClips(const model::TrainedModel& trained,
                               const text::WordEmbeddingTable& table,
                               std::span<const pose::Clip> clips,
                               std::span<const std::size_t> indices,
                               bool self_reference) {
  eval::EvalAccumulator acc(trained.skeleton, trained.fps);
  for (std::size_t c : indices) {
    if (c >= clips.size()) throw ContractError("clip index out of range");
    const pose::Clip& clip = clips[c];
    model::CheckCompatible(trained, clip.motion.skeleton());
    if (clip.motion.fps() != trained.fps) {
      throw ContractError("clip " + clip.id + " is at " + std::to_string(clip.motion.fps()) +
                          " Hz, checkpoint expects " + std::to_string(trained.fps) + " Hz");
    }
    const pose::RootPose initial = pose::Process(clip.motion).initial();
    for (const std::string& sentence : clip.sentences) {
      if (self_reference) {
        acc.Add(clip.id, sentence, clip.motion, clip.motion);
      } else {
        acc.Add(clip.id, sentence,
                model::GenerateAnimation(trained, table, sentence,
                                         clip.motion.frame_count(), initial),
                clip.motion);
      }
    }
  }
  return acc.Finish();
}

std::string AnimationToJson(const pose::PoseSequence& seq,
                            const std::string& sentence) {
  nlohmann::ordered_json j;
  j["schema_version"] = kAnimationSchemaVersion;
  j["sentence"] = sentence;
  j["fps"] = seq.fps();
  j["joint_names"] = seq.skeleton().joint_names();
  j["root_index"] = seq.skeleton().root_index();
  auto frames = nlohmann::ordered_json::array();
  for (std::size_t t = 0; t < seq.frame_count(); ++t) {
    auto frame = nlohmann::ordered_json::array();
    for (const auto& p : seq.frame(t)) frame.push_back({p.x, p.y, p.z});
    frames.push_back(std::move(frame));
  }
  j["frames"] = std::move(frames);
  return j.dump() + "\n";
}

std::string TrajectoryCsv(const pose::PoseSequence& seq) {
  const auto traj = eval::ExtractTrajectory(seq);
  std::ostringstream out;
  out.precision(17);
  out << "frame,x_mm,z_mm\n";
  for (std::size_t t = 0; t < traj.size(); ++t) {
    out << t << "," << traj.x[t] << "," << traj.z[t] << "\n";
  }
  return out.str();
}

void RunSynth(const SynthOptions& options) {
  if (options.clips < synth::kMotionClassCount) {
    throw ContractError("--clips must be at least " +
                        std::to_string(synth::kMotionClassCount) + ", got " +
                        std::to_string(options.clips));
  }
  CheckWritable(options.out);
  const auto corpus = synth::BuildCorpus(options.clips, options.seed, options.frames);
  pose::WriteCorpusFile(options.out, corpus.Clips());
}

train::TrainingReport RunTrain(const RunConfig& config) {
  config.train.Validate();
  CheckReadable(config.paths.corpus, "corpus");
  if (!config.paths.embeddings.empty()) {
    CheckReadable(config.paths.embeddings, "embeddings file");
  }
  const std::string checkpoint = config.CheckpointPath();
  const std::string report_path = Join(config.paths.out_dir, "training_report.json");
  CheckWritable(checkpoint);
  CheckWritable(report_path);

  const auto clips = pose::ReadCorpusFile(config.paths.corpus);
  const auto table = LoadEmbeddingTable(config.paths.embeddings, config.model.word_dim);
  TrainOutcome out = TrainOnClips(clips, table, config);
  out.report.checkpoint_path = checkpoint;
  model::SaveModelCheckpointFile(out.trained, checkpoint);
  WriteTextFile(report_path, train::TrainingReportToJson(out.report));
  return out.report;
}

eval::EvalReport RunEval(const EvalOptions& options) {
  CheckReadable(options.checkpoint, "checkpoint");
  CheckReadable(options.corpus, "corpus");
  const std::string report_path = Join(options.out_dir, "eval_report.json");
  const std::string pck_path = Join(options.out_dir, "pck.csv");
  const std::string time_path = Join(options.out_dir, "ape_time.csv");
  for (const auto& p : {report_path, pck_path, time_path}) CheckWritable(p);

  const auto trained = model::LoadModelCheckpointFile(options.checkpoint);
  const auto clips = pose::ReadCorpusFile(options.corpus);
  if (clips.empty()) throw ContractError("corpus is empty");
  model::CheckCompatible(trained, clips[0].motion.skeleton());
  const auto table = model::LoadEmbeddings(trained);

  std::vector<std::size_t> indices;
  if (options.all_clips) {
    for (std::size_t i = 0; i < clips.size(); ++i) indices.push_back(i);
  } else {
    indices = HeldOutClips(trained, clips.size());
  }
  auto report = EvaluateClips(trained, table, clips, indices, options.self_reference);
  WriteTextFile(report_path, eval::EvalReportToJson(report));
  WriteTextFile(pck_path, eval::PckCsv(report));
  WriteTextFile(time_path, eval::ApeOverTimeCsv(report));
  return report;
}

pose::PoseSequence RunGenerate(const GenerateOptions& options) {
  if (options.steps <= 0) {
    throw ContractError("--t-steps must be positive, got " + std::to_string(options.steps));
  }
  CheckReadable(options.checkpoint, "checkpoint");
  std::string trajectory = options.trajectory_out;
  if (trajectory.empty()) {
    fs::path p(options.out);
    trajectory = (p.parent_path() / (p.stem().string() + "_trajectory.csv")).string();
  }
  CheckWritable(options.out);
  CheckWritable(trajectory);

  const auto trained = model::LoadModelCheckpointFile(options.checkpoint);
  const auto table = model::LoadEmbeddings(trained);
  const auto seq = model::GenerateAnimation(trained, table, options.sentence,
                                            static_cast<std::size_t>(options.steps));
  WriteTextFile(options.out, AnimationToJson(seq, options.sentence));
  WriteTextFile(trajectory, TrajectoryCsv(seq));
  return seq;
}

}  // namespace jl2p::cli

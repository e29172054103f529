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

#include "jl2p/model/trained_model.h"

#include <fstream>
#include <istream>
#include <ostream>

#include "autodiff/checkpoint_json.h"
#include "jl2p/autodiff/checkpoint.h"
#include "jl2p/error.h"
#include "json.hpp"

namespace jl2p::model {

using json = nlohmann::ordered_json;

void SaveModelCheckpoint(const TrainedModel& trained, std::ostream& out) {
  const ModelConfig& c = trained.model.config();
  json doc = ad::ParametersToJson(trained.model.parameters());
  json header;
  header["schema_version"] = kModelCheckpointSchemaVersion;
  header["model_config"] = {{"latent_dim", c.latent_dim},
                            {"sentence_hidden", c.sentence_hidden},
                            {"pose_hidden", c.pose_hidden},
                            {"decoder_hidden", c.decoder_hidden},
                            {"feature_dim", c.feature_dim},
                            {"word_dim", c.word_dim},
                            {"seed", c.seed}};
  header["layout"] = {{"J", trained.skeleton.joint_count()},
                      {"joint_names", trained.skeleton.joint_names()},
                      {"root_index", trained.skeleton.root_index()},
                      {"F", c.feature_dim},
                      {"K", c.word_dim},
                      {"fps", trained.fps}};
  header["scaler"] = {{"mean", trained.scaler.mean()},
                      {"scale", trained.scaler.scale()}};
  header["embeddings"] = {
      {"source", trained.embeddings_path.empty() ? "hash" : "file"},
      {"path", trained.embeddings_path}};
  header["split"] = {{"seed", trained.split_seed},
                     {"val_fraction", trained.val_fraction}};
  doc["header"] = std::move(header);
  out << doc.dump() << '\n';
}

TrainedModel LoadModelCheckpoint(std::istream& in) {
  json doc;
  try {
    in >> doc;
    const json& header = doc.at("header");
    if (header.at("schema_version").get<int>() != kModelCheckpointSchemaVersion) {
      throw ParseError("unsupported model checkpoint schema_version");
    }
    const json& mc = header.at("model_config");
    ModelConfig config;
    config.latent_dim = mc.at("latent_dim").get<std::size_t>();
    config.sentence_hidden = mc.at("sentence_hidden").get<std::size_t>();
    config.pose_hidden = mc.at("pose_hidden").get<std::size_t>();
    config.decoder_hidden = mc.at("decoder_hidden").get<std::size_t>();
    config.feature_dim = mc.at("feature_dim").get<std::size_t>();
    config.word_dim = mc.at("word_dim").get<std::size_t>();
    config.seed = mc.at("seed").get<std::uint64_t>();

    const json& layout = header.at("layout");
    pose::Skeleton skeleton(layout.at("joint_names").get<std::vector<std::string>>(),
                            layout.at("root_index").get<std::size_t>());
    if (layout.at("J").get<std::size_t>() != skeleton.joint_count() ||
        layout.at("F").get<std::size_t>() != config.feature_dim ||
        layout.at("K").get<std::size_t>() != config.word_dim ||
        pose::FeatureDim(skeleton.joint_count()) != config.feature_dim) {
      throw ParseError("checkpoint layout is inconsistent with model_config");
    }
    pose::FeatureScaler scaler(header.at("scaler").at("mean").get<std::vector<double>>(),
                               header.at("scaler").at("scale").get<std::vector<double>>());
    if (scaler.dim() != config.feature_dim) {
      throw ParseError("checkpoint scaler dimension does not match F");
    }

    TrainedModel trained{JL2PModel(config), std::move(skeleton),
                         layout.at("fps").get<double>(), std::move(scaler),
                         header.at("embeddings").at("path").get<std::string>(),
                         header.at("split").at("seed").get<std::uint64_t>(),
                         header.at("split").at("val_fraction").get<double>()};
    ad::AssignParameters(trained.model.parameters(), ad::ParametersFromJson(doc));
    return trained;
  } catch (const json::exception& e) {
    throw ParseError(std::string("malformed model checkpoint: ") + e.what());
  }
}

void SaveModelCheckpointFile(const TrainedModel& trained, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write checkpoint '" + path + "'");
  SaveModelCheckpoint(trained, out);
  if (!out) throw Error("failed writing checkpoint '" + path + "'");
}

TrainedModel LoadModelCheckpointFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open checkpoint '" + path + "'");
  return LoadModelCheckpoint(in);
}

void CheckCompatible(const TrainedModel& trained, const pose::Skeleton& skeleton) {
  if (!(trained.skeleton == skeleton)) {
    throw ContractError("skeleton mismatch: checkpoint has " +
                        trained.skeleton.Describe() + ", corpus has " +
                        skeleton.Describe());
  }
}

text::WordEmbeddingTable LoadEmbeddings(const TrainedModel& trained) {
  if (trained.embeddings_path.empty()) {
    return text::WordEmbeddingTable(trained.model.config().word_dim);
  }
  auto table = text::WordEmbeddingTable::LoadFile(trained.embeddings_path);
  if (table.dim() != trained.model.config().word_dim) {
    throw DimensionError("embeddings file has K=" + std::to_string(table.dim()) +
                         ", checkpoint expects K=" +
                         std::to_string(trained.model.config().word_dim));
  }
  return table;
}

pose::PoseSequence GenerateAnimation(const TrainedModel& trained,
                                     const text::WordEmbeddingTable& table,
                                     std::string_view sentence,
                                     std::size_t steps,
                                     const pose::RootPose& initial) {
  if (steps < 1) throw ContractError("generation length must be >= 1");
  const auto tokens = text::EmbedSentence(sentence, table);
  const auto normalized = trained.model.Generate(tokens, steps);
  pose::ProcessedSequence proc(trained.skeleton,
                               trained.scaler.Denormalize(normalized),
                               trained.fps, initial);
  return pose::Invert(proc);
}

}  // namespace jl2p::model

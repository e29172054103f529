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

#include "jl2p/cli/run_config.h"

#include <charconv>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include "jl2p/error.h"
#include "json.hpp"

namespace jl2p::cli {
namespace {

using Setter = std::function<void(RunConfig&, const std::string&)>;

std::string Describe(const std::string& key, const std::string& value) {
  return "invalid value '" + value + "' for " + key;
}

template <typename T>
T ParseNumber(const std::string& key, const std::string& value) {
  T out{};
  const char* end = value.data() + value.size();
  auto [ptr, ec] = std::from_chars(value.data(), end, out);
  if (ec != std::errc() || ptr != end || value.empty()) {
    throw ContractError(Describe(key, value));
  }
  return out;
}

bool ParseBool(const std::string& key, const std::string& value) {
  if (value == "true" || value == "1" || value == "on" || value == "yes") return true;
  if (value == "false" || value == "0" || value == "off" || value == "no") return false;
  throw ContractError(Describe(key, value));
}

template <typename T>
Setter Number(T RunConfig::*section, auto field) {
  return [section, field](RunConfig& c, const std::string& v) {
    using Field = std::remove_reference_t<decltype(c.*section.*field)>;
    (c.*section).*field = ParseNumber<Field>("value", v);
  };
}

const std::map<std::string, Setter>& Setters() {
  static const auto* table = new std::map<std::string, Setter>{
      {"paths.corpus", [](RunConfig& c, const std::string& v) { c.paths.corpus = v; }},
      {"paths.embeddings", [](RunConfig& c, const std::string& v) { c.paths.embeddings = v; }},
      {"paths.checkpoint", [](RunConfig& c, const std::string& v) { c.paths.checkpoint = v; }},
      {"paths.out_dir", [](RunConfig& c, const std::string& v) { c.paths.out_dir = v; }},
      {"model.latent_dim", Number(&RunConfig::model, &model::ModelConfig::latent_dim)},
      {"model.sentence_hidden", Number(&RunConfig::model, &model::ModelConfig::sentence_hidden)},
      {"model.pose_hidden", Number(&RunConfig::model, &model::ModelConfig::pose_hidden)},
      {"model.decoder_hidden", Number(&RunConfig::model, &model::ModelConfig::decoder_hidden)},
      {"model.word_dim", Number(&RunConfig::model, &model::ModelConfig::word_dim)},
      {"model.seed", Number(&RunConfig::model, &model::ModelConfig::seed)},
      {"train.curriculum",
       [](RunConfig& c, const std::string& v) { c.train.curriculum = ParseBool("train.curriculum", v); }},
      {"train.loss", [](RunConfig& c, const std::string& v) { c.train.loss = ad::ParseLossKind(v); }},
      {"train.embedding_mode",
       [](RunConfig& c, const std::string& v) { c.train.embedding_mode = train::ParseEmbeddingMode(v); }},
      {"train.coin_prob", Number(&RunConfig::train, &train::TrainConfig::coin_prob)},
      {"train.val_fraction", Number(&RunConfig::train, &train::TrainConfig::val_fraction)},
      {"train.patience", Number(&RunConfig::train, &train::TrainConfig::patience)},
      {"train.max_t", Number(&RunConfig::train, &train::TrainConfig::max_t)},
      {"train.batch_size", Number(&RunConfig::train, &train::TrainConfig::batch_size)},
      {"train.max_epochs_per_stage",
       Number(&RunConfig::train, &train::TrainConfig::max_epochs_per_stage)},
      {"train.seed", Number(&RunConfig::train, &train::TrainConfig::seed)},
      {"train.optimizer",
       [](RunConfig& c, const std::string& v) { c.train.optimizer.kind = ad::ParseOptimizerKind(v); }},
      {"train.learning_rate",
       [](RunConfig& c, const std::string& v) {
         c.train.optimizer.learning_rate = ParseNumber<double>("train.learning_rate", v);
       }},
      {"train.clip_norm",
       [](RunConfig& c, const std::string& v) {
         c.train.optimizer.clip_norm = ParseNumber<double>("train.clip_norm", v);
       }},
  };
  return *table;
}

std::string ScalarText(const nlohmann::json& v, const std::string& key) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
  if (v.is_number()) return v.dump();
  throw ContractError("config key " + key + " must be a string, number or boolean");
}

}  // namespace

std::string RunConfig::CheckpointPath() const {
  if (!paths.checkpoint.empty()) return paths.checkpoint;
  return paths.out_dir + "/model.json";
}

std::vector<std::string> ConfigKeys() {
  std::vector<std::string> keys;
  for (const auto& [k, _] : Setters()) keys.push_back(k);
  return keys;
}

std::string EnvName(const std::string& key) {
  std::string out = "JL2P_";
  for (char c : key) {
    out += c == '.' ? '_' : static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  }
  return out;
}

void SetConfigValue(RunConfig& config, const std::string& key,
                    const std::string& value) {
  const auto it = Setters().find(key);
  if (it == Setters().end()) throw ContractError("unknown config key: " + key);
  try {
    it->second(config, value);
  } catch (const Error&) {
    throw ContractError(Describe(key, value));
  }
}

void ApplyConfigJson(RunConfig& config, const std::string& json_text,
                     const std::string& origin) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(origin + ": " + e.what());
  }
  if (!doc.is_object()) throw ParseError(origin + ": top level must be an object");
  for (const auto& [section, body] : doc.items()) {
    if (section == "schema_version") continue;
    if (section != "paths" && section != "model" && section != "train") {
      throw ContractError(origin + ": unknown config section: " + section);
    }
    if (!body.is_object()) {
      throw ContractError(origin + ": section '" + section + "' must be an object");
    }
    for (const auto& [name, value] : body.items()) {
      SetConfigValue(config, section + "." + name, ScalarText(value, section + "." + name));
    }
  }
}

void ApplyConfigFile(RunConfig& config, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot read config file " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  ApplyConfigJson(config, buf.str(), path);
}

void ApplyEnvironment(RunConfig& config, EnvLookup lookup) {
  for (const auto& key : ConfigKeys()) {
    const std::string name = EnvName(key);
    if (const char* v = lookup(name.c_str())) SetConfigValue(config, key, v);
  }
}

RunConfig ResolveConfig(const std::string& config_file, EnvLookup lookup,
                        const Overrides& overrides) {
  RunConfig config;
  if (!config_file.empty()) ApplyConfigFile(config, config_file);
  if (lookup != nullptr) ApplyEnvironment(config, lookup);
  for (const auto& [k, v] : overrides) SetConfigValue(config, k, v);
  config.train.Validate();
  return config;
}

std::string ConfigToJson(const RunConfig& c) {
  nlohmann::ordered_json j;
  j["schema_version"] = 1;
  j["paths"] = {{"corpus", c.paths.corpus},
                {"embeddings", c.paths.embeddings},
                {"checkpoint", c.CheckpointPath()},
                {"out_dir", c.paths.out_dir}};
  j["model"] = {{"latent_dim", c.model.latent_dim},
                {"sentence_hidden", c.model.sentence_hidden},
                {"pose_hidden", c.model.pose_hidden},
                {"decoder_hidden", c.model.decoder_hidden},
                {"word_dim", c.model.word_dim},
                {"seed", c.model.seed}};
  j["train"] = {{"curriculum", c.train.curriculum},
                {"loss", ad::LossKindName(c.train.loss)},
                {"embedding_mode", train::EmbeddingModeName(c.train.embedding_mode)},
                {"coin_prob", c.train.coin_prob},
                {"val_fraction", c.train.val_fraction},
                {"patience", c.train.patience},
                {"max_t", c.train.max_t},
                {"batch_size", c.train.batch_size},
                {"max_epochs_per_stage", c.train.max_epochs_per_stage},
                {"seed", c.train.seed},
                {"optimizer", ad::OptimizerKindName(c.train.optimizer.kind)},
                {"learning_rate", c.train.optimizer.learning_rate},
                {"clip_norm", c.train.optimizer.clip_norm}};
  return j.dump(2) + "\n";
}

}  // namespace jl2p::cli

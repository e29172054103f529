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

#ifndef JL2P_CLI_RUN_CONFIG_H_
#define JL2P_CLI_RUN_CONFIG_H_

#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "jl2p/model/jl2p_model.h"
#include "jl2p/train/trainer.h"

namespace jl2p::cli {

struct Paths {
  std::string corpus;
  std::string embeddings;  // empty: hash-fallback vectors
  std::string checkpoint;  // empty: <out_dir>/model.json
  std::string out_dir = ".";
};

// Everything a command needs, merged from (lowest to highest precedence)
// built-in defaults, a JSON config file, JL2P_* environment variables and
// command-line flags.
struct RunConfig {
  Paths paths;
  model::ModelConfig model;
  train::TrainConfig train;

  std::string CheckpointPath() const;
};

// Dotted keys such as "train.max_t"; the file uses the same names nested
// ({"train": {"max_t": 16}}) and the environment uses JL2P_TRAIN_MAX_T.
std::vector<std::string> ConfigKeys();
std::string EnvName(const std::string& key);

// Sets one key from its textual value. Throws ContractError for unknown keys
// or unparsable values.
void SetConfigValue(RunConfig& config, const std::string& key,
                    const std::string& value);

// Applies a nested JSON document; unknown sections or keys are errors.
void ApplyConfigJson(RunConfig& config, const std::string& json_text,
                     const std::string& origin);
void ApplyConfigFile(RunConfig& config, const std::string& path);

// `getenv` is injectable for tests.
using EnvLookup = const char* (*)(const char*);
void ApplyEnvironment(RunConfig& config, EnvLookup lookup);

// Overrides are (key, value) pairs collected from flags, applied in order.
using Overrides = std::vector<std::pair<std::string, std::string>>;

// Full layering: defaults < file (if non-empty) < env < overrides.
RunConfig ResolveConfig(const std::string& config_file, EnvLookup lookup,
                        const Overrides& overrides);

// Echo of the merged config, for logs and reports.
std::string ConfigToJson(const RunConfig& config);

}  // namespace jl2p::cli

#endif  // JL2P_CLI_RUN_CONFIG_H_

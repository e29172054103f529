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

// jl2p: synth | train | eval | generate.

#include <cstdio>
#include <cstdlib>
#include <iostream>

#include "CLI11.hpp"
#include "jl2p/cli/pipeline.h"
#include "jl2p/cli/run_config.h"
#include "jl2p/error.h"

namespace {

using jl2p::cli::Overrides;

const char* EnvVar(const char* name) { return std::getenv(name); }

// Adds a value option that records a config override when given.
void Override(CLI::App* app, const std::string& flag, std::vector<std::string> keys,
              Overrides* out, const std::string& help) {
  app->add_option_function<std::string>(
      flag,
      [keys, out](const std::string& v) {
        for (const auto& k : keys) out->emplace_back(k, v);
      },
      help);
}

void AddConfigOptions(CLI::App* app, std::string* config_file, Overrides* ov) {
  app->add_option("--config", *config_file, "JSON config file (nested sections)");
  Override(app, "--corpus", {"paths.corpus"}, ov, "corpus JSON-lines file");
  Override(app, "--embeddings", {"paths.embeddings"}, ov,
           "word vectors in text format (default: hash-fallback)");
  Override(app, "--checkpoint", {"paths.checkpoint"}, ov, "checkpoint path");
  Override(app, "--out-dir", {"paths.out_dir"}, ov, "output directory");
  app->add_option_function<std::vector<std::string>>(
      "--set",
      [ov](const std::vector<std::string>& items) {
        for (const auto& item : items) {
          const auto eq = item.find('=');
          if (eq == std::string::npos) {
            throw CLI::ValidationError("--set", "expected key=value, got " + item);
          }
          ov->emplace_back(item.substr(0, eq), item.substr(eq + 1));
        }
      },
      "generic override, e.g. --set train.max_t=16 (repeatable)");
}

void AddTrainOptions(CLI::App* app, Overrides* ov) {
  Override(app, "--seed", {"train.seed", "model.seed"}, ov,
           "seed for the split, coin flips and initialization");
  Override(app, "--max-t", {"train.max_t"}, ov, "longest prediction horizon");
  Override(app, "--loss", {"train.loss"}, ov, "smooth_l1 | l2");
  Override(app, "--embedding", {"train.embedding_mode"}, ov, "joint | sequential");
  Override(app, "--coin-prob", {"train.coin_prob"}, ov,
           "probability of routing a pair through the pose encoder");
  Override(app, "--patience", {"train.patience"}, ov,
           "non-improving validation epochs before the horizon doubles");
  Override(app, "--epochs-per-stage", {"train.max_epochs_per_stage"}, ov,
           "epoch cap per curriculum stage");
  Override(app, "--val-fraction", {"train.val_fraction"}, ov, "held-out clip fraction");
  Override(app, "--batch-size", {"train.batch_size"}, ov, "pairs per optimizer step");
  Override(app, "--lr", {"train.learning_rate"}, ov, "learning rate");
  Override(app, "--latent-dim", {"model.latent_dim"}, ov, "size of the joint embedding");
  Override(app, "--hidden", {"model.sentence_hidden", "model.pose_hidden", "model.decoder_hidden"},
           ov, "hidden size of all three recurrent networks");
  app->add_flag_callback(
      "--no-curriculum", [ov] { ov->emplace_back("train.curriculum", "false"); },
      "train a single stage at max-t");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Sentence-to-pose joint embedding toolkit"};
  app.require_subcommand(1);

  jl2p::cli::SynthOptions synth_opts;
  auto* synth = app.add_subcommand("synth", "write a synthetic corpus");
  synth->add_option("--clips", synth_opts.clips, "number of clips (>= 8)");
  synth->add_option("--seed", synth_opts.seed, "corpus seed");
  synth->add_option("--frames", synth_opts.frames, "frames per clip");
  synth->add_option("--out", synth_opts.out, "output JSON-lines file")->required();

  std::string train_config;
  Overrides train_ov;
  auto* train = app.add_subcommand("train", "train a model on a corpus");
  AddConfigOptions(train, &train_config, &train_ov);
  AddTrainOptions(train, &train_ov);

  std::string eval_config;
  Overrides eval_ov;
  jl2p::cli::EvalOptions eval_opts;
  auto* eval = app.add_subcommand("eval", "score generated poses on held-out clips");
  AddConfigOptions(eval, &eval_config, &eval_ov);
  eval->add_flag("--self-reference", eval_opts.self_reference,
                 "score the recordings against themselves (sanity check)");
  eval->add_flag("--all", eval_opts.all_clips, "evaluate every clip, not just the held-out split");

  std::string gen_config;
  Overrides gen_ov;
  jl2p::cli::GenerateOptions gen_opts;
  auto* gen = app.add_subcommand("generate", "turn a sentence into an animation");
  AddConfigOptions(gen, &gen_config, &gen_ov);
  gen->add_option("--sentence", gen_opts.sentence, "input sentence")->required();
  gen->add_option("--t-steps", gen_opts.steps, "frames to generate (default 100)");
  gen->add_option("--out", gen_opts.out, "animation JSON path")->required();
  gen->add_option("--trajectory", gen_opts.trajectory_out,
                  "trajectory CSV path (default: next to --out)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*synth) {
      jl2p::cli::RunSynth(synth_opts);
      std::cout << "wrote " << synth_opts.clips << " clips to " << synth_opts.out << "\n";
    } else if (*train) {
      const auto config = jl2p::cli::ResolveConfig(train_config, EnvVar, train_ov);
      const auto report = jl2p::cli::RunTrain(config);
      for (const auto& s : report.stages) {
        std::printf("%-11s t=%-3zu epochs=%-3d val_loss=%.6g\n", jl2p::train::PhaseName(s.phase),
                    s.t, s.epochs, s.val_loss.empty() ? 0.0 : s.val_loss.back());
      }
      std::cout << "checkpoint: " << report.checkpoint_path << "\n";
    } else if (*eval) {
      const auto config = jl2p::cli::ResolveConfig(eval_config, EnvVar, eval_ov);
      eval_opts.checkpoint = config.CheckpointPath();
      eval_opts.corpus = config.paths.corpus;
      eval_opts.out_dir = config.paths.out_dir;
      const auto report = jl2p::cli::RunEval(eval_opts);
      std::printf("pairs=%zu clips=%zu mean_ape=%.3f mm mean_ape_without_root=%.3f mm\n",
                  report.pair_count, report.clip_count, report.mean_ape,
                  report.mean_ape_without_root);
    } else if (*gen) {
      const auto config = jl2p::cli::ResolveConfig(gen_config, EnvVar, gen_ov);
      gen_opts.checkpoint = config.CheckpointPath();
      const auto seq = jl2p::cli::RunGenerate(gen_opts);
      std::cout << "wrote " << seq.frame_count() << " frames to " << gen_opts.out << "\n";
    }
  } catch (const jl2p::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

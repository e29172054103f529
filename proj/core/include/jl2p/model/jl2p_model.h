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

#ifndef JL2P_MODEL_JL2P_MODEL_H_
#define JL2P_MODEL_JL2P_MODEL_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "jl2p/autodiff/layers.h"
#include "jl2p/autodiff/tape.h"
#include "jl2p/text/embedding_table.h"

namespace jl2p::model {

struct ModelConfig {
  std::size_t latent_dim = 32;
  std::size_t sentence_hidden = 128;
  std::size_t pose_hidden = 128;
  std::size_t decoder_hidden = 128;
  std::size_t feature_dim = 0;
  std::size_t word_dim = text::kDefaultWordDim;
  std::uint64_t seed = 0;

  // Throws ContractError when any dimension is zero.
  void Validate() const;
};

// Parameter name prefixes of the three networks.
inline constexpr const char* kSentenceEncoderPrefix = "sentence_encoder/";
inline constexpr const char* kPoseEncoderPrefix = "pose_encoder/";
inline constexpr const char* kDecoderPrefix = "decoder/";

// Sentence encoder (LSTM over word vectors), pose encoder (GRU over feature
// frames) and an autoregressive GRU pose decoder, all meeting in a shared
// latent space of size latent_dim.
//
// Pose features passed in and produced here are already standardized; see
// pose::FeatureScaler.
class JL2PModel {
 public:
  explicit JL2PModel(const ModelConfig& config);

  const ModelConfig& config() const { return config_; }
  ad::ParameterSet& parameters() { return params_; }
  const ad::ParameterSet& parameters() const { return params_; }

  std::vector<ad::Tensor> SentenceEncoderParams() const;
  std::vector<ad::Tensor> PoseEncoderParams() const;
  std::vector<ad::Tensor> DecoderParams() const;

  // Final LSTM hidden state, linearly projected to the latent space.
  ad::Tensor EncodeSentence(ad::Tape& tape, const text::TokenSequence& x) const;

  // GRU over the first `frames` rows of a row-major T x F buffer.
  ad::Tensor EncodePose(ad::Tape& tape, std::span<const double> features,
                        std::size_t frames) const;

  // Returns a [steps, F] tensor. The GRU state starts at tanh(W z + b); each
  // step feeds the previous output frame (the seed frame first, zeros when
  // empty) and emits input + delta.
  ad::Tensor Decode(ad::Tape& tape, const ad::Tensor& z, std::size_t steps,
                    std::span<const double> seed_frame = {}) const;

  // Cross-modal loss d(decode(encode_sentence(x)), Y[0:t]).
  ad::Tensor ForwardCross(ad::Tape& tape, const text::TokenSequence& x,
                          std::span<const double> target, std::size_t t,
                          ad::LossKind loss) const;
  // Autoencoder loss d(decode(encode_pose(Y[0:t])), Y[0:t]).
  ad::Tensor ForwardAuto(ad::Tape& tape, std::span<const double> input,
                         std::span<const double> target, std::size_t t,
                         ad::LossKind loss) const;

  // Inference conveniences; no gradients are recorded.
  std::vector<double> SentenceEmbedding(const text::TokenSequence& x) const;
  std::vector<double> PoseEmbedding(std::span<const double> features,
                                    std::size_t frames) const;
  std::vector<double> Generate(const text::TokenSequence& x,
                               std::size_t steps) const;

 private:
  ad::Tensor TargetTensor(std::span<const double> target, std::size_t t) const;

  ModelConfig config_;
  ad::ParameterSet params_;
  ad::LstmParams sentence_lstm_;
  ad::LinearParams sentence_proj_;
  ad::GruParams pose_gru_;
  ad::LinearParams pose_proj_;
  ad::LinearParams decoder_init_;
  ad::GruParams decoder_gru_;
  ad::LinearParams decoder_out_;
};

}  // namespace jl2p::model

#endif  // JL2P_MODEL_JL2P_MODEL_H_

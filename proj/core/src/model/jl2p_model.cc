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

#include "jl2p/model/jl2p_model.h"

#include <string>

#include "jl2p/error.h"
#include "jl2p/random.h"

namespace jl2p::model {

using ad::Tape;
using ad::Tensor;

void ModelConfig::Validate() const {
  if (latent_dim < 1 || sentence_hidden < 1 || pose_hidden < 1 ||
      decoder_hidden < 1 || feature_dim < 1 || word_dim < 1) {
    throw ContractError("model dimensions must all be >= 1");
  }
}

JL2PModel::JL2PModel(const ModelConfig& config) : config_(config) {
  config_.Validate();
  Rng rng(config_.seed);
  const std::string se = kSentenceEncoderPrefix;
  const std::string pe = kPoseEncoderPrefix;
  const std::string de = kDecoderPrefix;
  sentence_lstm_ = ad::AddLstm(params_, se + "lstm", config_.word_dim,
                               config_.sentence_hidden, rng);
  sentence_proj_ = ad::AddLinear(params_, se + "proj", config_.sentence_hidden,
                                 config_.latent_dim, rng);
  pose_gru_ = ad::AddGru(params_, pe + "gru", config_.feature_dim,
                         config_.pose_hidden, rng);
  pose_proj_ = ad::AddLinear(params_, pe + "proj", config_.pose_hidden,
                             config_.latent_dim, rng);
  decoder_init_ = ad::AddLinear(params_, de + "init", config_.latent_dim,
                                config_.decoder_hidden, rng);
  decoder_gru_ = ad::AddGru(params_, de + "gru", config_.feature_dim,
                            config_.decoder_hidden, rng);
  decoder_out_ = ad::AddLinear(params_, de + "out", config_.decoder_hidden,
                               config_.feature_dim, rng);
}

std::vector<Tensor> JL2PModel::SentenceEncoderParams() const {
  return params_.WithPrefix(kSentenceEncoderPrefix);
}
std::vector<Tensor> JL2PModel::PoseEncoderParams() const {
  return params_.WithPrefix(kPoseEncoderPrefix);
}
std::vector<Tensor> JL2PModel::DecoderParams() const {
  return params_.WithPrefix(kDecoderPrefix);
}

Tensor JL2PModel::EncodeSentence(Tape& tape, const text::TokenSequence& x) const {
  if (x.length() == 0) throw ContractError("encode_sentence: empty sentence");
  if (x.dim != config_.word_dim) {
    throw DimensionError("encode_sentence: word vectors have K=" +
                         std::to_string(x.dim) + ", model expects K=" +
                         std::to_string(config_.word_dim));
  }
  ad::LstmState state{Tensor::Zeros({config_.sentence_hidden}),
                      Tensor::Zeros({config_.sentence_hidden})};
  for (std::size_t i = 0; i < x.length(); ++i) {
    const auto row = x.row(i);
    Tensor xi = Tensor::Vector({row.begin(), row.end()});
    state = ad::LstmCell(tape, xi, state, sentence_lstm_);
  }
  return ad::Linear(tape, state.h, sentence_proj_);
}

Tensor JL2PModel::EncodePose(Tape& tape, std::span<const double> features,
                             std::size_t frames) const {
  const std::size_t f = config_.feature_dim;
  if (frames < 1) throw ContractError("encode_pose: need at least one frame");
  if (features.size() % f != 0 || features.size() / f < frames) {
    throw DimensionError("encode_pose: buffer of " +
                         std::to_string(features.size()) +
                         " values does not hold " + std::to_string(frames) +
                         " frames of F=" + std::to_string(f));
  }
  Tensor h = Tensor::Zeros({config_.pose_hidden});
  for (std::size_t t = 0; t < frames; ++t) {
    const auto row = features.subspan(t * f, f);
    h = ad::GruCell(tape, Tensor::Vector({row.begin(), row.end()}), h, pose_gru_);
  }
  return ad::Linear(tape, h, pose_proj_);
}

Tensor JL2PModel::Decode(Tape& tape, const Tensor& z, std::size_t steps,
                         std::span<const double> seed_frame) const {
  const std::size_t f = config_.feature_dim;
  if (steps < 1) throw ContractError("decode: steps must be >= 1");
  if (z.rank() != 1 || z.size() != config_.latent_dim) {
    throw DimensionError("decode: latent has shape " + ad::ShapeString(z.shape()) +
                         ", expected [" + std::to_string(config_.latent_dim) + "]");
  }
  Tensor input;
  if (seed_frame.empty()) {
    input = Tensor::Zeros({f});
  } else if (seed_frame.size() == f) {
    input = Tensor::Vector({seed_frame.begin(), seed_frame.end()});
  } else {
    throw DimensionError("decode: seed frame has " +
                         std::to_string(seed_frame.size()) +
                         " features, expected " + std::to_string(f));
  }
  Tensor h = tape.Tanh(ad::Linear(tape, z, decoder_init_));
  std::vector<Tensor> outputs;
  outputs.reserve(steps);
  for (std::size_t t = 0; t < steps; ++t) {
    h = ad::GruCell(tape, input, h, decoder_gru_);
    input = tape.Add(input, ad::Linear(tape, h, decoder_out_));
    outputs.push_back(input);
  }
  return tape.Stack(outputs);
}

Tensor JL2PModel::TargetTensor(std::span<const double> target,
                               std::size_t t) const {
  const std::size_t f = config_.feature_dim;
  if (target.size() % f != 0 || target.size() / f < t) {
    throw DimensionError("target holds fewer than " + std::to_string(t) +
                         " frames of F=" + std::to_string(f));
  }
  return Tensor({t, f}, {target.begin(), target.begin() + t * f});
}

Tensor JL2PModel::ForwardCross(Tape& tape, const text::TokenSequence& x,
                               std::span<const double> target, std::size_t t,
                               ad::LossKind loss) const {
  const Tensor y = TargetTensor(target, t);
  const Tensor z = EncodeSentence(tape, x);
  return tape.Loss(loss, Decode(tape, z, t), y);
}

Tensor JL2PModel::ForwardAuto(Tape& tape, std::span<const double> input,
                              std::span<const double> target, std::size_t t,
                              ad::LossKind loss) const {
  const Tensor y = TargetTensor(target, t);
  const Tensor z = EncodePose(tape, input, t);
  return tape.Loss(loss, Decode(tape, z, t), y);
}

std::vector<double> JL2PModel::SentenceEmbedding(const text::TokenSequence& x) const {
  Tape tape(Tape::Mode::kInference);
  const Tensor z = EncodeSentence(tape, x);
  return {z.values().begin(), z.values().end()};
}

std::vector<double> JL2PModel::PoseEmbedding(std::span<const double> features,
                                             std::size_t frames) const {
  Tape tape(Tape::Mode::kInference);
  const Tensor z = EncodePose(tape, features, frames);
  return {z.values().begin(), z.values().end()};
}

std::vector<double> JL2PModel::Generate(const text::TokenSequence& x,
                                        std::size_t steps) const {
  Tape tape(Tape::Mode::kInference);
  const Tensor y = Decode(tape, EncodeSentence(tape, x), steps);
  return {y.values().begin(), y.values().end()};
}

}  // namespace jl2p::model

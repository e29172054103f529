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

// Micro benchmarks for the recurrent cells and one full training step.

#include <benchmark/benchmark.h>

#include "jl2p/autodiff/layers.h"
#include "jl2p/autodiff/tape.h"
#include "jl2p/model/jl2p_model.h"
#include "jl2p/random.h"
#include "jl2p/text/embedding_table.h"

namespace {

using jl2p::ad::Tape;
using jl2p::ad::Tensor;

Tensor RandomVector(std::size_t n, jl2p::Rng& rng) {
  std::vector<double> v(n);
  for (double& x : v) x = rng.Uniform(-1, 1);
  return Tensor::Vector(std::move(v));
}

void BM_GruStep(benchmark::State& state) {
  const auto hidden = static_cast<std::size_t>(state.range(0));
  jl2p::Rng rng(1);
  jl2p::ad::ParameterSet params;
  const auto p = jl2p::ad::AddGru(params, "gru", 25, hidden, rng);
  const Tensor x = RandomVector(25, rng);
  const Tensor h = RandomVector(hidden, rng);
  for (auto _ : state) {
    Tape tape(Tape::Mode::kInference);
    benchmark::DoNotOptimize(jl2p::ad::GruCell(tape, x, h, p));
  }
}
BENCHMARK(BM_GruStep)->Arg(32)->Arg(64)->Arg(128);

void BM_LstmStep(benchmark::State& state) {
  const auto hidden = static_cast<std::size_t>(state.range(0));
  jl2p::Rng rng(2);
  jl2p::ad::ParameterSet params;
  const auto p = jl2p::ad::AddLstm(params, "lstm", 64, hidden, rng);
  const Tensor x = RandomVector(64, rng);
  const jl2p::ad::LstmState s{RandomVector(hidden, rng), RandomVector(hidden, rng)};
  for (auto _ : state) {
    Tape tape(Tape::Mode::kInference);
    benchmark::DoNotOptimize(jl2p::ad::LstmCell(tape, x, s, p).h);
  }
}
BENCHMARK(BM_LstmStep)->Arg(32)->Arg(64)->Arg(128);

// Forward and backward through both paths at horizon t.
void BM_ForwardBackward(benchmark::State& state) {
  const auto t = static_cast<std::size_t>(state.range(0));
  jl2p::model::ModelConfig c;
  c.latent_dim = 32;
  c.sentence_hidden = c.pose_hidden = c.decoder_hidden = 64;
  c.feature_dim = 25;
  c.word_dim = 64;
  jl2p::model::JL2PModel m(c);
  const jl2p::text::WordEmbeddingTable table(64);
  const auto x = jl2p::text::EmbedSentence("a person walks forward slowly", table);
  jl2p::Rng rng(3);
  std::vector<double> y(t * 25);
  for (double& v : y) v = rng.Uniform(-1, 1);
  for (auto _ : state) {
    Tape tape;
    Tensor loss = tape.Add(m.ForwardCross(tape, x, y, t, jl2p::ad::LossKind::kSmoothL1),
                           m.ForwardAuto(tape, y, y, t, jl2p::ad::LossKind::kSmoothL1));
    tape.Backward(loss);
    benchmark::DoNotOptimize(loss.item());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(t));
}
BENCHMARK(BM_ForwardBackward)->Arg(2)->Arg(8)->Arg(32)->Unit(benchmark::kMicrosecond);

void BM_Generate(benchmark::State& state) {
  jl2p::model::ModelConfig c;
  c.latent_dim = 32;
  c.sentence_hidden = c.pose_hidden = c.decoder_hidden = 64;
  c.feature_dim = 25;
  c.word_dim = 64;
  jl2p::model::JL2PModel m(c);
  const jl2p::text::WordEmbeddingTable table(64);
  const auto x = jl2p::text::EmbedSentence("someone quickly runs in a circle", table);
  for (auto _ : state) benchmark::DoNotOptimize(m.Generate(x, 100));
}
BENCHMARK(BM_Generate)->Unit(benchmark::kMicrosecond);

}  // namespace

BENCHMARK_MAIN();

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

#ifndef JL2P_AUTODIFF_LAYERS_H_
#define JL2P_AUTODIFF_LAYERS_H_

#include <cstddef>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "jl2p/autodiff/tape.h"
#include "jl2p/autodiff/tensor.h"
#include "jl2p/random.h"

namespace jl2p::ad {

// Named, ordered collection of trainable leaves.
class ParameterSet {
 public:
  // Registers a parameter initialized uniformly in [-bound, bound].
  Tensor Add(std::string name, Shape shape, double bound, Rng& rng);
  Tensor Add(std::string name, Tensor value);

  bool Contains(std::string_view name) const;
  // Throws ContractError when missing.
  const Tensor& Get(std::string_view name) const;

  const std::vector<std::pair<std::string, Tensor>>& entries() const {
    return entries_;
  }
  std::vector<Tensor> All() const;
  std::vector<Tensor> WithPrefix(std::string_view prefix) const;
  std::size_t ScalarCount() const;

  void ZeroGrad();
  void SetRequiresGrad(std::string_view prefix, bool flag);

 private:
  std::vector<std::pair<std::string, Tensor>> entries_;
};

struct LinearParams {
  Tensor weight;  // [in, out]
  Tensor bias;    // [out]
};

// Gate order in the packed matrices: reset, update, candidate.
struct GruParams {
  Tensor w_ih;  // [in, 3H]
  Tensor w_hh;  // [H, 3H]
  Tensor b_ih;  // [3H]
  Tensor b_hh;  // [3H]
};

// Gate order in the packed matrices: input, forget, cell, output.
struct LstmParams {
  Tensor w_ih;  // [in, 4H]
  Tensor w_hh;  // [H, 4H]
  Tensor bias;  // [4H]
};

struct LstmState {
  Tensor h;
  Tensor c;
};

// Each initializer draws from U(-1/sqrt(fan_in), 1/sqrt(fan_in)).
LinearParams AddLinear(ParameterSet& params, const std::string& prefix,
                       std::size_t in, std::size_t out, Rng& rng);
GruParams AddGru(ParameterSet& params, const std::string& prefix,
                 std::size_t in, std::size_t hidden, Rng& rng);
LstmParams AddLstm(ParameterSet& params, const std::string& prefix,
                   std::size_t in, std::size_t hidden, Rng& rng);

LinearParams GetLinear(const ParameterSet& params, const std::string& prefix);
GruParams GetGru(const ParameterSet& params, const std::string& prefix);
LstmParams GetLstm(const ParameterSet& params, const std::string& prefix);

Tensor Linear(Tape& tape, const Tensor& x, const LinearParams& p);

//   r = sigmoid(W_ir x + b_ir + W_hr h + b_hr)
//   z = sigmoid(W_iz x + b_iz + W_hz h + b_hz)
//   n = tanh(W_in x + b_in + r * (W_hn h + b_hn))
//   h' = (1 - z) * n + z * h
Tensor GruCell(Tape& tape, const Tensor& x, const Tensor& h_prev,
               const GruParams& p);

//   i, f, o = sigmoid(.), g = tanh(.)
//   c' = f * c + i * g,  h' = o * tanh(c')
LstmState LstmCell(Tape& tape, const Tensor& x, const LstmState& prev,
                   const LstmParams& p);

}  // namespace jl2p::ad

#endif  // JL2P_AUTODIFF_LAYERS_H_

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

#include "jl2p/autodiff/optimizer.h"

#include <cmath>

#include "jl2p/error.h"

namespace jl2p::ad {

const char* OptimizerKindName(OptimizerKind kind) {
  return kind == OptimizerKind::kAdam ? "adam" : "sgd";
}

OptimizerKind ParseOptimizerKind(const std::string& name) {
  if (name == "adam") return OptimizerKind::kAdam;
  if (name == "sgd") return OptimizerKind::kSgd;
  throw ContractError("unknown optimizer '" + name + "' (expected adam or sgd)");
}

double GlobalGradNorm(std::span<const Tensor> params) {
  double sq = 0.0;
  for (const Tensor& p : params) {
    for (double g : p.grad()) sq += g * g;
  }
  return std::sqrt(sq);
}

Optimizer::Optimizer(OptimizerOptions options) : options_(options) {
  if (!(options_.learning_rate > 0.0)) {
    throw ContractError("learning rate must be positive");
  }
}

void Optimizer::Step(std::span<Tensor> params) {
  for (const Tensor& p : params) {
    if (!p.has_grad()) {
      throw ContractError("optimizer step on a parameter without gradient");
    }
  }
  double scale = 1.0;
  if (options_.clip_norm > 0.0) {
    const double norm = GlobalGradNorm(params);
    if (norm > options_.clip_norm) scale = options_.clip_norm / norm;
  }
  ++steps_;
  const double lr = options_.learning_rate;
  for (Tensor& p : params) {
    std::span<double> w = p.mutable_values();
    std::span<const double> g = p.grad();
    if (options_.kind == OptimizerKind::kSgd) {
      for (std::size_t i = 0; i < w.size(); ++i) w[i] -= lr * scale * g[i];
    } else {
      Moments& st = moments_[p.node()];
      if (st.m.empty()) {
        st.m.assign(w.size(), 0.0);
        st.v.assign(w.size(), 0.0);
      }
      ++st.steps;
      const double b1 = options_.beta1;
      const double b2 = options_.beta2;
      const double c1 = 1.0 - std::pow(b1, static_cast<double>(st.steps));
      const double c2 = 1.0 - std::pow(b2, static_cast<double>(st.steps));
      for (std::size_t i = 0; i < w.size(); ++i) {
        const double gi = g[i] * scale;
        st.m[i] = b1 * st.m[i] + (1.0 - b1) * gi;
        st.v[i] = b2 * st.v[i] + (1.0 - b2) * gi * gi;
        const double m_hat = st.m[i] / c1;
        const double v_hat = st.v[i] / c2;
        w[i] -= lr * m_hat / (std::sqrt(v_hat) + options_.epsilon);
      }
    }
    p.ZeroGrad();
  }
}

}  // namespace jl2p::ad

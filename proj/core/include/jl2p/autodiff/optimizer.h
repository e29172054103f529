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

#ifndef JL2P_AUTODIFF_OPTIMIZER_H_
#define JL2P_AUTODIFF_OPTIMIZER_H_

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "jl2p/autodiff/tensor.h"

namespace jl2p::ad {

enum class OptimizerKind { kSgd, kAdam };

const char* OptimizerKindName(OptimizerKind kind);
OptimizerKind ParseOptimizerKind(const std::string& name);

struct OptimizerOptions {
  OptimizerKind kind = OptimizerKind::kAdam;
  double learning_rate = 1e-3;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;
  // Global gradient norm cap over the parameters of one step; 0 disables.
  double clip_norm = 5.0;
};

double GlobalGradNorm(std::span<const Tensor> params);

class Optimizer {
 public:
  explicit Optimizer(OptimizerOptions options);

  // Updates every parameter in `params` from its gradient, then clears the
  // gradients. Parameters not passed keep their moments untouched. Throws
  // ContractError if any parameter has no gradient.
  void Step(std::span<Tensor> params);

  const OptimizerOptions& options() const { return options_; }
  std::uint64_t step_count() const { return steps_; }

 private:
  struct Moments {
    std::vector<double> m;
    std::vector<double> v;
    std::uint64_t steps = 0;
  };

  OptimizerOptions options_;
  std::uint64_t steps_ = 0;
  std::map<const internal::TensorNode*, Moments> moments_;
};

}  // namespace jl2p::ad

#endif  // JL2P_AUTODIFF_OPTIMIZER_H_

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

#ifndef JL2P_AUTODIFF_TAPE_H_
#define JL2P_AUTODIFF_TAPE_H_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "jl2p/autodiff/tensor.h"

namespace jl2p::ad {

enum class LossKind { kSmoothL1, kL2 };

const char* LossKindName(LossKind kind);
LossKind ParseLossKind(const std::string& name);

struct BackwardStats {
  std::size_t ops_visited = 0;
};

// Records differentiable operations in execution order so that Backward()
// can replay them in reverse. A tape belongs to one thread.
//
// Operations whose inputs do not require gradients (and every operation on
// an inference tape) are evaluated eagerly without being recorded.
class Tape {
 public:
  enum class Mode { kRecord, kInference };

  explicit Tape(Mode mode = Mode::kRecord);
  Tape(const Tape&) = delete;
  Tape& operator=(const Tape&) = delete;
  Tape(Tape&&) = default;
  Tape& operator=(Tape&&) = default;

  // a: [m, k] or [k]; b: [k, n]. Result is [m, n] (or [n] for vector a).
  Tensor MatMul(const Tensor& a, const Tensor& b);

  // Elementwise. Either operand may be broadcast when its shape equals the
  // trailing dimensions of the other.
  Tensor Add(const Tensor& a, const Tensor& b);
  Tensor Sub(const Tensor& a, const Tensor& b);
  Tensor Mul(const Tensor& a, const Tensor& b);

  Tensor Sigmoid(const Tensor& a);
  Tensor Tanh(const Tensor& a);

  // Joins along the last axis. All parts must agree on the leading axes.
  Tensor Concat(std::span<const Tensor> parts);
  // Half-open range [begin, end) of the last axis.
  Tensor Slice(const Tensor& a, std::size_t begin, std::size_t end);
  // Stacks equal-length vectors into a [count, n] matrix.
  Tensor Stack(std::span<const Tensor> rows);

  Tensor Sum(const Tensor& a);

  // Mean over elements of the Huber-style loss with unit threshold.
  Tensor SmoothL1(const Tensor& pred, const Tensor& target);
  // Mean squared error.
  Tensor L2Loss(const Tensor& pred, const Tensor& target);
  Tensor Loss(LossKind kind, const Tensor& pred, const Tensor& target);

  // Reverse-mode sweep from a scalar produced on this tape. Gradients of
  // leaves accumulate across calls; intermediate gradients are recomputed.
  BackwardStats Backward(const Tensor& loss);

  std::size_t size() const { return ops_.size(); }
  bool recording() const { return mode_ == Mode::kRecord; }
  std::uint64_t id() const { return id_; }

 private:
  using Node = internal::TensorNode;
  using NodePtr = std::shared_ptr<Node>;

  struct Op {
    std::vector<NodePtr> inputs;
    NodePtr output;
    std::function<void(Op&)> backward;
  };

  bool ShouldRecord(std::span<const Tensor> inputs) const;
  Tensor Emit(std::span<const Tensor> inputs, Shape shape,
              std::vector<double> values, std::function<void(Op&)> backward);
  Tensor Elementwise(const Tensor& a, const Tensor& b, int kind);

  Mode mode_;
  std::uint64_t id_;
  std::vector<Op> ops_;
};

BackwardStats Backward(const Tensor& loss, Tape& tape);

}  // namespace jl2p::ad

#endif  // JL2P_AUTODIFF_TAPE_H_

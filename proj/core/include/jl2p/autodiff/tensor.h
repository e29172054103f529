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

#ifndef JL2P_AUTODIFF_TENSOR_H_
#define JL2P_AUTODIFF_TENSOR_H_

#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

namespace jl2p::ad {

using Shape = std::vector<std::size_t>;

std::size_t NumElements(const Shape& shape);
std::string ShapeString(const Shape& shape);

namespace internal {

struct TensorNode {
  Shape shape;
  std::vector<double> values;
  // Empty until a backward pass reaches this node.
  std::vector<double> grad;
  bool requires_grad = false;
  // Id of the tape that produced this node; 0 for leaves.
  std::uint64_t tape_id = 0;

  bool has_grad() const { return !grad.empty(); }
  std::vector<double>& EnsureGrad() {
    if (grad.empty()) grad.assign(values.size(), 0.0);
    return grad;
  }
};

}  // namespace internal

// Shared handle to a dense row-major array of doubles. Copies alias the same
// storage; use Clone() for a deep copy.
class Tensor {
 public:
  Tensor() = default;

  // Leaf tensor. Throws ContractError on non-finite values and
  // DimensionError when the value count does not match the shape.
  Tensor(Shape shape, std::vector<double> values, bool requires_grad = false);

  static Tensor Zeros(Shape shape, bool requires_grad = false);
  static Tensor Scalar(double value, bool requires_grad = false);
  static Tensor Vector(std::vector<double> values, bool requires_grad = false);

  bool defined() const { return node_ != nullptr; }
  const Shape& shape() const { return node_->shape; }
  std::size_t rank() const { return node_->shape.size(); }
  std::size_t size() const { return node_->values.size(); }
  // Size of the last axis (1 for scalars).
  std::size_t cols() const;
  // Product of all but the last axis.
  std::size_t rows() const;

  std::span<const double> values() const { return node_->values; }
  std::span<double> mutable_values() { return node_->values; }
  double item() const;
  double operator[](std::size_t i) const { return node_->values[i]; }

  bool requires_grad() const { return node_->requires_grad; }
  void set_requires_grad(bool flag) { node_->requires_grad = flag; }

  bool has_grad() const { return node_->has_grad(); }
  // Empty span when no gradient has been populated.
  std::span<const double> grad() const { return node_->grad; }
  std::span<double> mutable_grad() { return node_->EnsureGrad(); }
  void ZeroGrad() { node_->grad.clear(); }

  bool is_leaf() const { return node_->tape_id == 0; }

  Tensor Clone() const;

  internal::TensorNode* node() const { return node_.get(); }
  const std::shared_ptr<internal::TensorNode>& shared_node() const {
    return node_;
  }
  explicit Tensor(std::shared_ptr<internal::TensorNode> node)
      : node_(std::move(node)) {}

 private:
  std::shared_ptr<internal::TensorNode> node_;
};

}  // namespace jl2p::ad

#endif  // JL2P_AUTODIFF_TENSOR_H_

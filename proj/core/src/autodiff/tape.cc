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

#include "jl2p/autodiff/tape.h"

#include <algorithm>
#include <atomic>
#include <cmath>

#include "jl2p/error.h"

namespace jl2p::ad {
namespace {

std::atomic<std::uint64_t> next_tape_id{1};

enum ElementwiseKind { kAdd = 0, kSub = 1, kMul = 2 };

bool IsSuffix(const Shape& small, const Shape& big) {
  if (small.size() > big.size()) return false;
  return std::equal(small.rbegin(), small.rend(), big.rbegin());
}

double StableSigmoid(double x) {
  if (x >= 0) {
    return 1.0 / (1.0 + std::exp(-x));
  }
  const double e = std::exp(x);
  return e / (1.0 + e);
}

void CheckSameShape(const char* op, const Tensor& a, const Tensor& b) {
  if (a.shape() != b.shape()) {
    throw DimensionError(std::string(op) + ": shape mismatch " +
                         ShapeString(a.shape()) + " vs " +
                         ShapeString(b.shape()));
  }
}

}  // namespace

const char* LossKindName(LossKind kind) {
  return kind == LossKind::kSmoothL1 ? "smooth_l1" : "l2";
}

LossKind ParseLossKind(const std::string& name) {
  if (name == "smooth_l1") return LossKind::kSmoothL1;
  if (name == "l2") return LossKind::kL2;
  throw ContractError("unknown loss '" + name + "' (expected smooth_l1 or l2)");
}

Tape::Tape(Mode mode) : mode_(mode), id_(next_tape_id.fetch_add(1)) {}

bool Tape::ShouldRecord(std::span<const Tensor> inputs) const {
  if (mode_ != Mode::kRecord) return false;
  return std::any_of(inputs.begin(), inputs.end(),
                     [](const Tensor& t) { return t.requires_grad(); });
}

Tensor Tape::Emit(std::span<const Tensor> inputs, Shape shape,
                  std::vector<double> values,
                  std::function<void(Op&)> backward) {
  auto node = std::make_shared<Node>();
  node->shape = std::move(shape);
  node->values = std::move(values);
  if (ShouldRecord(inputs)) {
    node->requires_grad = true;
    node->tape_id = id_;
    Op op;
    op.inputs.reserve(inputs.size());
    for (const Tensor& t : inputs) op.inputs.push_back(t.shared_node());
    op.output = node;
    op.backward = std::move(backward);
    ops_.push_back(std::move(op));
  }
  return Tensor(std::move(node));
}

Tensor Tape::MatMul(const Tensor& a, const Tensor& b) {
  const bool vector_lhs = a.rank() == 1;
  if ((a.rank() != 1 && a.rank() != 2) || b.rank() != 2 ||
      a.cols() != b.shape()[0]) {
    throw DimensionError("matmul: incompatible shapes " +
                         ShapeString(a.shape()) + " and " +
                         ShapeString(b.shape()));
  }
  const std::size_t m = vector_lhs ? 1 : a.shape()[0];
  const std::size_t k = a.cols();
  const std::size_t n = b.shape()[1];
  std::vector<double> out(m * n, 0.0);
  const double* av = a.values().data();
  const double* bv = b.values().data();
  for (std::size_t i = 0; i < m; ++i) {
    double* row = out.data() + i * n;
    for (std::size_t p = 0; p < k; ++p) {
      const double s = av[i * k + p];
      const double* brow = bv + p * n;
      for (std::size_t j = 0; j < n; ++j) row[j] += s * brow[j];
    }
  }
  Shape shape = vector_lhs ? Shape{n} : Shape{m, n};
  const Tensor inputs[] = {a, b};
  return Emit(inputs, std::move(shape), std::move(out), [m, k, n](Op& op) {
    Node& an = *op.inputs[0];
    Node& bn = *op.inputs[1];
    const double* g = op.output->grad.data();
    if (an.requires_grad) {
      double* ga = an.EnsureGrad().data();
      const double* bv = bn.values.data();
      for (std::size_t i = 0; i < m; ++i) {
        const double* grow = g + i * n;
        for (std::size_t p = 0; p < k; ++p) {
          const double* brow = bv + p * n;
          double acc = 0.0;
          for (std::size_t j = 0; j < n; ++j) acc += grow[j] * brow[j];
          ga[i * k + p] += acc;
        }
      }
    }
    if (bn.requires_grad) {
      double* gb = bn.EnsureGrad().data();
      const double* av = an.values.data();
      for (std::size_t i = 0; i < m; ++i) {
        const double* grow = g + i * n;
        for (std::size_t p = 0; p < k; ++p) {
          const double s = av[i * k + p];
          double* gbrow = gb + p * n;
          for (std::size_t j = 0; j < n; ++j) gbrow[j] += s * grow[j];
        }
      }
    }
  });
}

Tensor Tape::Elementwise(const Tensor& a, const Tensor& b, int kind) {
  static const char* kNames[] = {"add", "sub", "mul"};
  Shape shape;
  if (a.shape() == b.shape() || IsSuffix(b.shape(), a.shape())) {
    shape = a.shape();
  } else if (IsSuffix(a.shape(), b.shape())) {
    shape = b.shape();
  } else {
    throw DimensionError(std::string(kNames[kind]) +
                         ": incompatible shapes " + ShapeString(a.shape()) +
                         " and " + ShapeString(b.shape()));
  }
  const std::size_t n = NumElements(shape);
  const std::size_t na = a.size();
  const std::size_t nb = b.size();
  const double* av = a.values().data();
  const double* bv = b.values().data();
  std::vector<double> out(n);
  if (na == n && nb == n) {
    switch (kind) {
      case kAdd:
        for (std::size_t i = 0; i < n; ++i) out[i] = av[i] + bv[i];
        break;
      case kSub:
        for (std::size_t i = 0; i < n; ++i) out[i] = av[i] - bv[i];
        break;
      default:
        for (std::size_t i = 0; i < n; ++i) out[i] = av[i] * bv[i];
    }
  } else {
    for (std::size_t i = 0; i < n; ++i) {
      const double x = av[i % na];
      const double y = bv[i % nb];
      out[i] = kind == kAdd ? x + y : kind == kSub ? x - y : x * y;
    }
  }
  const Tensor inputs[] = {a, b};
  return Emit(inputs, std::move(shape), std::move(out), [kind, n](Op& op) {
    Node& an = *op.inputs[0];
    Node& bn = *op.inputs[1];
    const double* g = op.output->grad.data();
    const std::size_t na = an.values.size();
    const std::size_t nb = bn.values.size();
    if (an.requires_grad) {
      double* ga = an.EnsureGrad().data();
      const double* bv = bn.values.data();
      for (std::size_t i = 0; i < n; ++i) {
        ga[i % na] += kind == kMul ? g[i] * bv[i % nb] : g[i];
      }
    }
    if (bn.requires_grad) {
      double* gb = bn.EnsureGrad().data();
      const double* av = an.values.data();
      for (std::size_t i = 0; i < n; ++i) {
        gb[i % nb] += kind == kMul ? g[i] * av[i % na]
                      : kind == kSub ? -g[i]
                                     : g[i];
      }
    }
  });
}

Tensor Tape::Add(const Tensor& a, const Tensor& b) {
  return Elementwise(a, b, kAdd);
}
Tensor Tape::Sub(const Tensor& a, const Tensor& b) {
  return Elementwise(a, b, kSub);
}
Tensor Tape::Mul(const Tensor& a, const Tensor& b) {
  return Elementwise(a, b, kMul);
}

Tensor Tape::Sigmoid(const Tensor& a) {
  std::vector<double> out(a.size());
  const double* av = a.values().data();
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = StableSigmoid(av[i]);
  const Tensor inputs[] = {a};
  return Emit(inputs, a.shape(), std::move(out), [](Op& op) {
    Node& an = *op.inputs[0];
    if (!an.requires_grad) return;
    double* ga = an.EnsureGrad().data();
    const double* y = op.output->values.data();
    const double* g = op.output->grad.data();
    for (std::size_t i = 0; i < an.values.size(); ++i) {
      ga[i] += g[i] * y[i] * (1.0 - y[i]);
    }
  });
}

Tensor Tape::Tanh(const Tensor& a) {
  std::vector<double> out(a.size());
  const double* av = a.values().data();
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = std::tanh(av[i]);
  const Tensor inputs[] = {a};
  return Emit(inputs, a.shape(), std::move(out), [](Op& op) {
    Node& an = *op.inputs[0];
    if (!an.requires_grad) return;
    double* ga = an.EnsureGrad().data();
    const double* y = op.output->values.data();
    const double* g = op.output->grad.data();
    for (std::size_t i = 0; i < an.values.size(); ++i) {
      ga[i] += g[i] * (1.0 - y[i] * y[i]);
    }
  });
}

Tensor Tape::Concat(std::span<const Tensor> parts) {
  if (parts.empty()) throw DimensionError("concat: no inputs");
  const Shape& first = parts[0].shape();
  if (first.empty()) throw DimensionError("concat: scalar input");
  const std::size_t rows = parts[0].rows();
  std::size_t total_cols = 0;
  std::vector<std::size_t> offsets;
  for (const Tensor& p : parts) {
    const Shape& s = p.shape();
    if (s.size() != first.size() ||
        !std::equal(s.begin(), s.end() - 1, first.begin())) {
      throw DimensionError("concat: incompatible shapes " +
                           ShapeString(first) + " and " + ShapeString(s));
    }
    offsets.push_back(total_cols);
    total_cols += p.cols();
  }
  std::vector<double> out(rows * total_cols);
  for (std::size_t q = 0; q < parts.size(); ++q) {
    const std::size_t c = parts[q].cols();
    const double* src = parts[q].values().data();
    for (std::size_t r = 0; r < rows; ++r) {
      std::copy_n(src + r * c, c, out.data() + r * total_cols + offsets[q]);
    }
  }
  Shape shape = first;
  shape.back() = total_cols;
  return Emit(parts, std::move(shape), std::move(out),
              [rows, total_cols, offsets](Op& op) {
                const double* g = op.output->grad.data();
                for (std::size_t q = 0; q < op.inputs.size(); ++q) {
                  Node& in = *op.inputs[q];
                  if (!in.requires_grad) continue;
                  const std::size_t c = in.shape.back();
                  double* gi = in.EnsureGrad().data();
                  for (std::size_t r = 0; r < rows; ++r) {
                    const double* src = g + r * total_cols + offsets[q];
                    for (std::size_t j = 0; j < c; ++j) gi[r * c + j] += src[j];
                  }
                }
              });
}

Tensor Tape::Slice(const Tensor& a, std::size_t begin, std::size_t end) {
  if (a.rank() == 0 || begin >= end || end > a.cols()) {
    throw DimensionError("slice: range [" + std::to_string(begin) + ", " +
                         std::to_string(end) + ") invalid for shape " +
                         ShapeString(a.shape()));
  }
  const std::size_t rows = a.rows();
  const std::size_t cols = a.cols();
  const std::size_t width = end - begin;
  std::vector<double> out(rows * width);
  const double* av = a.values().data();
  for (std::size_t r = 0; r < rows; ++r) {
    std::copy_n(av + r * cols + begin, width, out.data() + r * width);
  }
  Shape shape = a.shape();
  shape.back() = width;
  const Tensor inputs[] = {a};
  return Emit(inputs, std::move(shape), std::move(out),
              [rows, cols, begin, width](Op& op) {
                Node& an = *op.inputs[0];
                if (!an.requires_grad) return;
                double* ga = an.EnsureGrad().data();
                const double* g = op.output->grad.data();
                for (std::size_t r = 0; r < rows; ++r) {
                  for (std::size_t j = 0; j < width; ++j) {
                    ga[r * cols + begin + j] += g[r * width + j];
                  }
                }
              });
}

Tensor Tape::Stack(std::span<const Tensor> rows) {
  if (rows.empty()) throw DimensionError("stack: no inputs");
  const std::size_t n = rows[0].size();
  std::vector<double> out;
  out.reserve(rows.size() * n);
  for (const Tensor& r : rows) {
    if (r.rank() != 1 || r.size() != n) {
      throw DimensionError("stack: expected vectors of length " +
                           std::to_string(n) + ", got " +
                           ShapeString(r.shape()));
    }
    out.insert(out.end(), r.values().begin(), r.values().end());
  }
  return Emit(rows, Shape{rows.size(), n}, std::move(out), [n](Op& op) {
    const double* g = op.output->grad.data();
    for (std::size_t q = 0; q < op.inputs.size(); ++q) {
      Node& in = *op.inputs[q];
      if (!in.requires_grad) continue;
      double* gi = in.EnsureGrad().data();
      for (std::size_t j = 0; j < n; ++j) gi[j] += g[q * n + j];
    }
  });
}

Tensor Tape::Sum(const Tensor& a) {
  double s = 0.0;
  for (double v : a.values()) s += v;
  const Tensor inputs[] = {a};
  return Emit(inputs, Shape{}, {s}, [](Op& op) {
    Node& an = *op.inputs[0];
    if (!an.requires_grad) return;
    const double g = op.output->grad[0];
    for (double& x : an.EnsureGrad()) x += g;
  });
}

Tensor Tape::SmoothL1(const Tensor& pred, const Tensor& target) {
  CheckSameShape("smooth_l1", pred, target);
  const std::size_t n = pred.size();
  const double* p = pred.values().data();
  const double* t = target.values().data();
  double total = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double d = std::abs(p[i] - t[i]);
    total += d < 1.0 ? 0.5 * d * d : d - 0.5;
  }
  const Tensor inputs[] = {pred, target};
  return Emit(inputs, Shape{}, {total / static_cast<double>(n)}, [n](Op& op) {
    Node& pn = *op.inputs[0];
    Node& tn = *op.inputs[1];
    const double scale = op.output->grad[0] / static_cast<double>(n);
    double* gp = pn.requires_grad ? pn.EnsureGrad().data() : nullptr;
    double* gt = tn.requires_grad ? tn.EnsureGrad().data() : nullptr;
    for (std::size_t i = 0; i < n; ++i) {
      const double d = pn.values[i] - tn.values[i];
      const double slope = std::clamp(d, -1.0, 1.0);
      if (gp) gp[i] += scale * slope;
      if (gt) gt[i] -= scale * slope;
    }
  });
}

Tensor Tape::L2Loss(const Tensor& pred, const Tensor& target) {
  CheckSameShape("l2_loss", pred, target);
  const std::size_t n = pred.size();
  const double* p = pred.values().data();
  const double* t = target.values().data();
  double total = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double d = p[i] - t[i];
    total += d * d;
  }
  const Tensor inputs[] = {pred, target};
  return Emit(inputs, Shape{}, {total / static_cast<double>(n)}, [n](Op& op) {
    Node& pn = *op.inputs[0];
    Node& tn = *op.inputs[1];
    const double scale = 2.0 * op.output->grad[0] / static_cast<double>(n);
    double* gp = pn.requires_grad ? pn.EnsureGrad().data() : nullptr;
    double* gt = tn.requires_grad ? tn.EnsureGrad().data() : nullptr;
    for (std::size_t i = 0; i < n; ++i) {
      const double d = pn.values[i] - tn.values[i];
      if (gp) gp[i] += scale * d;
      if (gt) gt[i] -= scale * d;
    }
  });
}

Tensor Tape::Loss(LossKind kind, const Tensor& pred, const Tensor& target) {
  return kind == LossKind::kSmoothL1 ? SmoothL1(pred, target)
                                     : L2Loss(pred, target);
}

BackwardStats Tape::Backward(const Tensor& loss) {
  if (!loss.defined() || loss.size() != 1) {
    throw ContractError("backward: loss must be a scalar, got shape " +
                        (loss.defined() ? ShapeString(loss.shape())
                                        : std::string("<undefined>")));
  }
  if (loss.node()->tape_id != id_) {
    throw ContractError("backward: loss was not produced on this tape");
  }
  for (Op& op : ops_) op.output->grad.clear();
  loss.node()->grad.assign(1, 1.0);

  BackwardStats stats;
  for (auto it = ops_.rbegin(); it != ops_.rend(); ++it) {
    ++stats.ops_visited;
    if (!it->output->has_grad()) continue;
    it->backward(*it);
  }
  return stats;
}

BackwardStats Backward(const Tensor& loss, Tape& tape) {
  return tape.Backward(loss);
}

}  // namespace jl2p::ad

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

#include "jl2p/autodiff/layers.h"

#include <algorithm>
#include <cmath>

#include "jl2p/error.h"

namespace jl2p::ad {
namespace {

void Expect(bool ok, const std::string& what, const Tensor& t) {
  if (!ok) {
    throw DimensionError(what + " has unexpected shape " +
                         ShapeString(t.shape()));
  }
}

double FanInBound(std::size_t fan_in) {
  return 1.0 / std::sqrt(static_cast<double>(std::max<std::size_t>(fan_in, 1)));
}

}  // namespace

Tensor ParameterSet::Add(std::string name, Shape shape, double bound,
                         Rng& rng) {
  std::vector<double> values(NumElements(shape));
  for (double& v : values) v = rng.Uniform(-bound, bound);
  return Add(std::move(name), Tensor(std::move(shape), std::move(values), true));
}

Tensor ParameterSet::Add(std::string name, Tensor value) {
  if (Contains(name)) throw ContractError("duplicate parameter '" + name + "'");
  value.set_requires_grad(true);
  entries_.emplace_back(std::move(name), value);
  return value;
}

bool ParameterSet::Contains(std::string_view name) const {
  return std::any_of(entries_.begin(), entries_.end(),
                     [&](const auto& e) { return e.first == name; });
}

const Tensor& ParameterSet::Get(std::string_view name) const {
  for (const auto& [n, t] : entries_) {
    if (n == name) return t;
  }
  throw ContractError("no parameter named '" + std::string(name) + "'");
}

std::vector<Tensor> ParameterSet::All() const {
  std::vector<Tensor> out;
  for (const auto& e : entries_) out.push_back(e.second);
  return out;
}

std::vector<Tensor> ParameterSet::WithPrefix(std::string_view prefix) const {
  std::vector<Tensor> out;
  for (const auto& [n, t] : entries_) {
    if (n.starts_with(prefix)) out.push_back(t);
  }
  return out;
}

std::size_t ParameterSet::ScalarCount() const {
  std::size_t n = 0;
  for (const auto& e : entries_) n += e.second.size();
  return n;
}

void ParameterSet::ZeroGrad() {
  for (auto& e : entries_) e.second.ZeroGrad();
}

void ParameterSet::SetRequiresGrad(std::string_view prefix, bool flag) {
  for (auto& [n, t] : entries_) {
    if (n.starts_with(prefix)) t.set_requires_grad(flag);
  }
}

LinearParams AddLinear(ParameterSet& params, const std::string& prefix,
                       std::size_t in, std::size_t out, Rng& rng) {
  const double bound = FanInBound(in);
  LinearParams p;
  p.weight = params.Add(prefix + "/weight", {in, out}, bound, rng);
  p.bias = params.Add(prefix + "/bias", {out}, bound, rng);
  return p;
}

GruParams AddGru(ParameterSet& params, const std::string& prefix,
                 std::size_t in, std::size_t hidden, Rng& rng) {
  GruParams p;
  p.w_ih = params.Add(prefix + "/w_ih", {in, 3 * hidden}, FanInBound(in), rng);
  p.w_hh = params.Add(prefix + "/w_hh", {hidden, 3 * hidden},
                      FanInBound(hidden), rng);
  p.b_ih = params.Add(prefix + "/b_ih", {3 * hidden}, FanInBound(in), rng);
  p.b_hh = params.Add(prefix + "/b_hh", {3 * hidden}, FanInBound(hidden), rng);
  return p;
}

LstmParams AddLstm(ParameterSet& params, const std::string& prefix,
                   std::size_t in, std::size_t hidden, Rng& rng) {
  LstmParams p;
  p.w_ih = params.Add(prefix + "/w_ih", {in, 4 * hidden}, FanInBound(in), rng);
  p.w_hh = params.Add(prefix + "/w_hh", {hidden, 4 * hidden},
                      FanInBound(hidden), rng);
  p.bias = params.Add(prefix + "/bias", {4 * hidden}, FanInBound(hidden), rng);
  return p;
}

LinearParams GetLinear(const ParameterSet& params, const std::string& prefix) {
  return {params.Get(prefix + "/weight"), params.Get(prefix + "/bias")};
}

GruParams GetGru(const ParameterSet& params, const std::string& prefix) {
  return {params.Get(prefix + "/w_ih"), params.Get(prefix + "/w_hh"),
          params.Get(prefix + "/b_ih"), params.Get(prefix + "/b_hh")};
}

LstmParams GetLstm(const ParameterSet& params, const std::string& prefix) {
  return {params.Get(prefix + "/w_ih"), params.Get(prefix + "/w_hh"),
          params.Get(prefix + "/bias")};
}

Tensor Linear(Tape& tape, const Tensor& x, const LinearParams& p) {
  return tape.Add(tape.MatMul(x, p.weight), p.bias);
}

Tensor GruCell(Tape& tape, const Tensor& x, const Tensor& h_prev,
               const GruParams& p) {
  Expect(h_prev.rank() == 1, "gru hidden state", h_prev);
  const std::size_t hidden = h_prev.size();
  Expect(x.rank() == 1 && p.w_ih.rank() == 2 && p.w_ih.shape()[0] == x.size() &&
             p.w_ih.shape()[1] == 3 * hidden,
         "gru w_ih", p.w_ih);
  Expect(p.w_hh.shape() == Shape{hidden, 3 * hidden}, "gru w_hh", p.w_hh);
  Expect(p.b_ih.shape() == Shape{3 * hidden}, "gru b_ih", p.b_ih);
  Expect(p.b_hh.shape() == Shape{3 * hidden}, "gru b_hh", p.b_hh);

  const Tensor gi = tape.Add(tape.MatMul(x, p.w_ih), p.b_ih);
  const Tensor gh = tape.Add(tape.MatMul(h_prev, p.w_hh), p.b_hh);
  const Tensor r = tape.Sigmoid(
      tape.Add(tape.Slice(gi, 0, hidden), tape.Slice(gh, 0, hidden)));
  const Tensor z = tape.Sigmoid(tape.Add(tape.Slice(gi, hidden, 2 * hidden),
                                         tape.Slice(gh, hidden, 2 * hidden)));
  const Tensor n = tape.Tanh(
      tape.Add(tape.Slice(gi, 2 * hidden, 3 * hidden),
               tape.Mul(r, tape.Slice(gh, 2 * hidden, 3 * hidden))));
  // (1 - z) * n + z * h  ==  n + z * (h - n)
  return tape.Add(n, tape.Mul(z, tape.Sub(h_prev, n)));
}

LstmState LstmCell(Tape& tape, const Tensor& x, const LstmState& prev,
                   const LstmParams& p) {
  Expect(prev.h.rank() == 1, "lstm hidden state", prev.h);
  const std::size_t hidden = prev.h.size();
  Expect(prev.c.shape() == prev.h.shape(), "lstm cell state", prev.c);
  Expect(x.rank() == 1 && p.w_ih.rank() == 2 && p.w_ih.shape()[0] == x.size() &&
             p.w_ih.shape()[1] == 4 * hidden,
         "lstm w_ih", p.w_ih);
  Expect(p.w_hh.shape() == Shape{hidden, 4 * hidden}, "lstm w_hh", p.w_hh);
  Expect(p.bias.shape() == Shape{4 * hidden}, "lstm bias", p.bias);

  const Tensor gates = tape.Add(
      tape.Add(tape.MatMul(x, p.w_ih), tape.MatMul(prev.h, p.w_hh)), p.bias);
  const Tensor i = tape.Sigmoid(tape.Slice(gates, 0, hidden));
  const Tensor f = tape.Sigmoid(tape.Slice(gates, hidden, 2 * hidden));
  const Tensor g = tape.Tanh(tape.Slice(gates, 2 * hidden, 3 * hidden));
  const Tensor o = tape.Sigmoid(tape.Slice(gates, 3 * hidden, 4 * hidden));
  LstmState next;
  next.c = tape.Add(tape.Mul(f, prev.c), tape.Mul(i, g));
  next.h = tape.Mul(o, tape.Tanh(next.c));
  return next;
}

}  // namespace jl2p::ad

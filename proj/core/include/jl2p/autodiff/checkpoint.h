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

#ifndef JL2P_AUTODIFF_CHECKPOINT_H_
#define JL2P_AUTODIFF_CHECKPOINT_H_

#include <iosfwd>
#include <string>

#include "jl2p/autodiff/layers.h"

namespace jl2p::ad {

inline constexpr int kCheckpointFormatVersion = 1;

// JSON document {"format_version", "parameters": {name: {shape, values}}}.
// Values are written with shortest round-trip precision, so save/load is
// lossless.
void SaveParameters(const ParameterSet& params, std::ostream& out);
ParameterSet LoadParameters(std::istream& in);

// Copies values from `src` into same-named, same-shaped tensors of `dst`.
// Throws DimensionError or ContractError when the two sets disagree.
void AssignParameters(ParameterSet& dst, const ParameterSet& src);

}  // namespace jl2p::ad

#endif  // JL2P_AUTODIFF_CHECKPOINT_H_

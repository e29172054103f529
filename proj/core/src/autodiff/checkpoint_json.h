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

#ifndef JL2P_SRC_AUTODIFF_CHECKPOINT_JSON_H_
#define JL2P_SRC_AUTODIFF_CHECKPOINT_JSON_H_

#include "json.hpp"
#include "jl2p/autodiff/layers.h"

namespace jl2p::ad {

nlohmann::ordered_json ParametersToJson(const ParameterSet& params);
ParameterSet ParametersFromJson(const nlohmann::ordered_json& doc);

}  // namespace jl2p::ad

#endif  // JL2P_SRC_AUTODIFF_CHECKPOINT_JSON_H_

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

#include "jl2p/autodiff/checkpoint.h"

#include <istream>
#include <ostream>

#include "autodiff/checkpoint_json.h"
#include "jl2p/error.h"

namespace jl2p::ad {

using json = nlohmann::ordered_json;

json ParametersToJson(const ParameterSet& params) {
  json doc;
  doc["format_version"] = kCheckpointFormatVersion;
  json tensors = json::object();
  for (const auto& [name, t] : params.entries()) {
    tensors[name] = {{"shape", t.shape()},
                     {"values", std::vector<double>(t.values().begin(),
                                                    t.values().end())}};
  }
  doc["parameters"] = std::move(tensors);
  return doc;
}

ParameterSet ParametersFromJson(const json& doc) {
  try {
    const int version = doc.at("format_version").get<int>();
    if (version != kCheckpointFormatVersion) {
      throw ParseError("unsupported checkpoint format_version " +
                       std::to_string(version));
    }
    ParameterSet params;
    for (const auto& [name, entry] : doc.at("parameters").items()) {
      Shape shape = entry.at("shape").get<Shape>();
      std::vector<double> values = entry.at("values").get<std::vector<double>>();
      params.Add(name, Tensor(std::move(shape), std::move(values), true));
    }
    return params;
  } catch (const json::exception& e) {
    throw ParseError(std::string("malformed checkpoint: ") + e.what());
  }
}

void SaveParameters(const ParameterSet& params, std::ostream& out) {
  out << ParametersToJson(params).dump() << '\n';
}

ParameterSet LoadParameters(std::istream& in) {
  json doc;
  try {
    in >> doc;
  } catch (const json::exception& e) {
    throw ParseError(std::string("checkpoint is not valid JSON: ") + e.what());
  }
  return ParametersFromJson(doc);
}

void AssignParameters(ParameterSet& dst, const ParameterSet& src) {
  if (dst.entries().size() != src.entries().size()) {
    throw ContractError("checkpoint holds " +
                        std::to_string(src.entries().size()) +
                        " parameters, model expects " +
                        std::to_string(dst.entries().size()));
  }
  for (const auto& [name, t] : dst.entries()) {
    const Tensor& s = src.Get(name);
    if (s.shape() != t.shape()) {
      throw DimensionError("parameter '" + name + "' has shape " +
                           ShapeString(s.shape()) + ", model expects " +
                           ShapeString(t.shape()));
    }
    Tensor target = t;
    std::copy(s.values().begin(), s.values().end(),
              target.mutable_values().begin());
  }
}

}  // namespace jl2p::ad

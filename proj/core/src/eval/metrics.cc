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

#include "jl2p/eval/metrics.h"

#include <algorithm>
#include <cctype>
#include <cmath>

#include "jl2p/error.h"

namespace jl2p::eval {
namespace {

void CheckComparable(const pose::PoseSequence& pred,
                     const pose::PoseSequence& truth) {
  if (!(pred.skeleton() == truth.skeleton())) {
    throw ContractError("skeleton mismatch: " + pred.skeleton().Describe() +
                        " vs " + truth.skeleton().Describe());
  }
  if (pred.frame_count() != truth.frame_count()) {
    throw ContractError("frame count mismatch: " +
                        std::to_string(pred.frame_count()) + " vs " +
                        std::to_string(truth.frame_count()));
  }
}

double Distance(const pose::Vec3& a, const pose::Vec3& b) {
  return pose::Norm(a - b);
}

bool ContainsAny(const std::string& name, std::initializer_list<const char*> keys) {
  std::string lower = name;
  for (char& c : lower) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return std::any_of(keys.begin(), keys.end(), [&](const char* k) {
    return lower.find(k) != std::string::npos;
  });
}

}  // namespace

double Ape(const pose::PoseSequence& pred, const pose::PoseSequence& truth,
           std::size_t joint) {
  CheckComparable(pred, truth);
  if (joint >= pred.joint_count()) {
    throw ContractError("joint index " + std::to_string(joint) + " out of range");
  }
  double total = 0.0;
  for (std::size_t t = 0; t < pred.frame_count(); ++t) {
    total += Distance(pred.at(t, joint), truth.at(t, joint));
  }
  return total / static_cast<double>(pred.frame_count());
}

std::vector<double> ApePerJoint(const pose::PoseSequence& pred,
                                const pose::PoseSequence& truth) {
  std::vector<double> out(pred.joint_count());
  for (std::size_t j = 0; j < out.size(); ++j) out[j] = Ape(pred, truth, j);
  return out;
}

double Pck(const pose::PoseSequence& pred, const pose::PoseSequence& truth,
           double sigma) {
  const double s[] = {sigma};
  return PckSweep(pred, truth, s)[0];
}

std::vector<double> PckSweep(const pose::PoseSequence& pred,
                             const pose::PoseSequence& truth,
                             std::span<const double> sigmas) {
  CheckComparable(pred, truth);
  for (double s : sigmas) {
    if (!(s > 0.0)) throw ContractError("PCK threshold must be positive");
  }
  std::vector<std::size_t> hits(sigmas.size(), 0);
  const auto& a = pred.positions();
  const auto& b = truth.positions();
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = Distance(a[i], b[i]);
    for (std::size_t k = 0; k < sigmas.size(); ++k) {
      if (d <= sigmas[k]) ++hits[k];
    }
  }
  std::vector<double> out(sigmas.size());
  for (std::size_t k = 0; k < out.size(); ++k) {
    out[k] = static_cast<double>(hits[k]) / static_cast<double>(a.size());
  }
  return out;
}

std::vector<PartGroup> DefaultPartGroups(const pose::Skeleton& skeleton) {
  std::vector<PartGroup> groups = {
      {"Root", {}}, {"Torso", {}}, {"Head", {}}, {"Arms", {}}, {"Legs", {}}};
  for (std::size_t j = 0; j < skeleton.joint_count(); ++j) {
    const std::string& n = skeleton.joint_names()[j];
    std::size_t g = 1;
    if (j == skeleton.root_index()) {
      g = 0;
    } else if (ContainsAny(n, {"head", "neck"})) {
      g = 2;
    } else if (ContainsAny(n, {"arm", "hand", "shoulder", "elbow", "wrist"})) {
      g = 3;
    } else if (ContainsAny(n, {"leg", "hip", "knee", "foot", "ankle", "toe"})) {
      g = 4;
    }
    groups[g].joints.push_back(j);
  }
  std::erase_if(groups, [](const PartGroup& g) { return g.joints.empty(); });
  return groups;
}

void CheckPartition(std::span<const PartGroup> groups, std::size_t joint_count) {
  std::vector<int> seen(joint_count, 0);
  for (const auto& g : groups) {
    for (std::size_t j : g.joints) {
      if (j >= joint_count) {
        throw ContractError("part group '" + g.name + "' names joint " +
                            std::to_string(j) + " out of range");
      }
      ++seen[j];
    }
  }
  for (std::size_t j = 0; j < joint_count; ++j) {
    if (seen[j] != 1) {
      throw ContractError("part groups are not a partition: joint " +
                          std::to_string(j) + " appears " +
                          std::to_string(seen[j]) + " times");
    }
  }
}

std::vector<std::vector<double>> ApeByPartOverTime(
    const pose::PoseSequence& pred, const pose::PoseSequence& truth,
    std::span<const PartGroup> groups) {
  CheckComparable(pred, truth);
  CheckPartition(groups, pred.joint_count());
  std::vector<std::vector<double>> out(pred.frame_count(),
                                       std::vector<double>(groups.size(), 0.0));
  for (std::size_t t = 0; t < pred.frame_count(); ++t) {
    for (std::size_t g = 0; g < groups.size(); ++g) {
      double total = 0.0;
      for (std::size_t j : groups[g].joints) {
        total += Distance(pred.at(t, j), truth.at(t, j));
      }
      out[t][g] = total / static_cast<double>(groups[g].joints.size());
    }
  }
  return out;
}

double Trajectory::PathLength() const {
  double total = 0.0;
  for (std::size_t i = 1; i < x.size(); ++i) {
    total += std::hypot(x[i] - x[i - 1], z[i] - z[i - 1]);
  }
  return total;
}

Trajectory ExtractTrajectory(const pose::PoseSequence& seq) {
  Trajectory traj;
  const pose::Vec3 origin = seq.root(0);
  for (std::size_t t = 0; t < seq.frame_count(); ++t) {
    traj.time_s.push_back(static_cast<double>(t) / seq.fps());
    traj.x.push_back(seq.root(t).x - origin.x);
    traj.z.push_back(seq.root(t).z - origin.z);
  }
  return traj;
}

}  // namespace jl2p::eval

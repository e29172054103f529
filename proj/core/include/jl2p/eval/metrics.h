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

#ifndef JL2P_EVAL_METRICS_H_
#define JL2P_EVAL_METRICS_H_

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "jl2p/pose/pose_sequence.h"

namespace jl2p::eval {

// Thresholds (mm) of the default PCK sweep.
inline const std::vector<double> kDefaultPckSigmas = {35.0, 40.0, 45.0, 50.0, 55.0};

// All metrics compare absolute positions and require equal frame counts and
// identical skeletons (ContractError otherwise).

// Mean over frames of the Euclidean error of one joint, in mm.
double Ape(const pose::PoseSequence& pred, const pose::PoseSequence& truth,
           std::size_t joint);
std::vector<double> ApePerJoint(const pose::PoseSequence& pred,
                                const pose::PoseSequence& truth);

// Fraction of (frame, joint) pairs whose error is <= sigma. sigma > 0.
double Pck(const pose::PoseSequence& pred, const pose::PoseSequence& truth,
           double sigma);
std::vector<double> PckSweep(const pose::PoseSequence& pred,
                             const pose::PoseSequence& truth,
                             std::span<const double> sigmas = kDefaultPckSigmas);

struct PartGroup {
  std::string name;
  std::vector<std::size_t> joints;
};

// Root, Torso, Head, Arms, Legs by joint-name keywords; joints matching no
// keyword fall into Torso. Empty groups are dropped.
std::vector<PartGroup> DefaultPartGroups(const pose::Skeleton& skeleton);

// Throws ContractError unless every joint appears in exactly one group.
void CheckPartition(std::span<const PartGroup> groups, std::size_t joint_count);

// result[t][g] = mean error over the joints of group g at frame t.
std::vector<std::vector<double>> ApeByPartOverTime(
    const pose::PoseSequence& pred, const pose::PoseSequence& truth,
    std::span<const PartGroup> groups);

// Root ground-plane path, shifted so frame 0 sits at the origin.
struct Trajectory {
  std::vector<double> time_s;
  std::vector<double> x;
  std::vector<double> z;

  std::size_t size() const { return x.size(); }
  double PathLength() const;
  // Displacement of the last point from the first.
  double FinalX() const { return x.empty() ? 0.0 : x.back(); }
  double FinalZ() const { return z.empty() ? 0.0 : z.back(); }
};

Trajectory ExtractTrajectory(const pose::PoseSequence& seq);

}  // namespace jl2p::eval

#endif  // JL2P_EVAL_METRICS_H_

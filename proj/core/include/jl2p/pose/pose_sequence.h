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

#ifndef JL2P_POSE_POSE_SEQUENCE_H_
#define JL2P_POSE_POSE_SEQUENCE_H_

#include <cstddef>
#include <span>
#include <vector>

#include "jl2p/pose/skeleton.h"

namespace jl2p::pose {

// T x J absolute joint positions in millimeters, Y up.
class PoseSequence {
 public:
  // Throws ContractError for T < 1, non-finite coordinates or fps <= 0, and
  // DimensionError when the position count is not a multiple of J.
  PoseSequence(Skeleton skeleton, std::vector<Vec3> positions, double fps);

  const Skeleton& skeleton() const { return skeleton_; }
  std::size_t frame_count() const { return positions_.size() / joint_count(); }
  std::size_t joint_count() const { return skeleton_.joint_count(); }
  double fps() const { return fps_; }

  const Vec3& at(std::size_t t, std::size_t j) const {
    return positions_[t * joint_count() + j];
  }
  const Vec3& root(std::size_t t) const { return at(t, skeleton_.root_index()); }
  std::span<const Vec3> frame(std::size_t t) const {
    return std::span<const Vec3>(positions_).subspan(t * joint_count(),
                                                     joint_count());
  }
  const std::vector<Vec3>& positions() const { return positions_; }

 private:
  Skeleton skeleton_;
  std::vector<Vec3> positions_;
  double fps_;
};

}  // namespace jl2p::pose

#endif  // JL2P_POSE_POSE_SEQUENCE_H_

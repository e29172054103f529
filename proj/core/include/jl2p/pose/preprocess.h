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

#ifndef JL2P_POSE_PREPROCESS_H_
#define JL2P_POSE_PREPROCESS_H_

#include <cstddef>
#include <span>
#include <vector>

#include "jl2p/pose/pose_sequence.h"
#include "jl2p/pose/skeleton.h"

namespace jl2p::pose {

// Per-frame feature layout:
//   [0] vx, [1] vz   root ground-plane velocity (mm/frame) in the facing
//                    frame of the previous pose
//   [2] omega        change of facing angle about +Y (rad/frame)
//   [3] root height  absolute Y of the root (mm)
//   [4..]            non-root joints, xyz, relative to the root's ground
//                    position and rotated into the facing frame
// Frame 0 repeats frame 1's velocities.
inline constexpr std::size_t kRootFeatureCount = 4;

std::size_t FeatureDim(std::size_t joint_count);

// Ground-plane pose from which the first frame's velocity is integrated.
struct RootPose {
  double x = 0.0;
  double z = 0.0;
  double facing = 0.0;  // radians; 0 faces +Z, pi/2 faces +X
};

class ProcessedSequence {
 public:
  // Throws DimensionError unless features.size() == T * FeatureDim(J).
  ProcessedSequence(Skeleton skeleton, std::vector<double> features,
                    double fps, RootPose initial);

  const Skeleton& skeleton() const { return skeleton_; }
  std::size_t feature_dim() const { return FeatureDim(skeleton_.joint_count()); }
  std::size_t frame_count() const { return features_.size() / feature_dim(); }
  double fps() const { return fps_; }
  const RootPose& initial() const { return initial_; }

  std::span<const double> row(std::size_t t) const {
    return std::span<const double>(features_).subspan(t * feature_dim(),
                                                      feature_dim());
  }
  const std::vector<double>& features() const { return features_; }

 private:
  Skeleton skeleton_;
  std::vector<double> features_;
  double fps_;
  RootPose initial_;
};

// Rotates (x, z) by `angle` about +Y.
void RotateY(double angle, double& x, double& z);

// Facing angle of every frame, from the ground-plane normal of the skeleton's
// facing pair (forward = up x (right - left)). A degenerate frame reuses the
// previous angle; a degenerate first frame, or a skeleton without a facing
// pair, throws ContractError.
std::vector<double> FacingAngles(const PoseSequence& seq);

struct FacingNormalized {
  PoseSequence pose;
  std::vector<double> angles;
};

// Rotates each frame about the root's vertical axis so it faces +Z.
FacingNormalized NormalizeFacing(const PoseSequence& seq);
PoseSequence RestoreFacing(const PoseSequence& normalized,
                           std::span<const double> angles);

// Requires T >= 2 (ContractError otherwise).
ProcessedSequence Process(const PoseSequence& seq);
PoseSequence Invert(const ProcessedSequence& proc);

// Keeps every (fps / target_fps)-th frame starting at frame 0. The ratio must
// be an integer.
PoseSequence Subsample(const PoseSequence& seq, double target_fps);

}  // namespace jl2p::pose

#endif  // JL2P_POSE_PREPROCESS_H_

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

#include "jl2p/pose/preprocess.h"

#include <cmath>
#include <numbers>
#include <string>

#include "jl2p/error.h"

namespace jl2p::pose {
namespace {

double WrapAngle(double a) {
  a = std::remainder(a, 2.0 * std::numbers::pi);
  return a;
}

std::string FormatRate(double hz) {
  std::string s = std::to_string(hz);
  while (!s.empty() && s.back() == '0') s.pop_back();
  if (!s.empty() && s.back() == '.') s.pop_back();
  return s + " Hz";
}

}  // namespace

std::size_t FeatureDim(std::size_t joint_count) {
  return kRootFeatureCount + 3 * (joint_count - 1);
}

ProcessedSequence::ProcessedSequence(Skeleton skeleton,
                                     std::vector<double> features, double fps,
                                     RootPose initial)
    : skeleton_(std::move(skeleton)),
      features_(std::move(features)),
      fps_(fps),
      initial_(initial) {
  const std::size_t f = feature_dim();
  if (features_.empty() || features_.size() % f != 0) {
    throw DimensionError("processed sequence holds " +
                         std::to_string(features_.size()) +
                         " values, expected a positive multiple of F=" +
                         std::to_string(f));
  }
}

void RotateY(double angle, double& x, double& z) {
  const double c = std::cos(angle);
  const double s = std::sin(angle);
  const double nx = x * c + z * s;
  const double nz = -x * s + z * c;
  x = nx;
  z = nz;
}

std::vector<double> FacingAngles(const PoseSequence& seq) {
  const auto& pair = seq.skeleton().facing_pair();
  if (!pair) {
    throw ContractError("skeleton has no facing joint pair: " +
                        seq.skeleton().Describe());
  }
  std::vector<double> angles(seq.frame_count());
  for (std::size_t t = 0; t < seq.frame_count(); ++t) {
    const Vec3 axis = seq.at(t, pair->right) - seq.at(t, pair->left);
    // up x axis, with up = +Y.
    const double fx = axis.z;
    const double fz = -axis.x;
    if (std::hypot(fx, fz) < 1e-9) {
      if (t == 0) {
        throw ContractError("degenerate facing direction in frame 0");
      }
      angles[t] = angles[t - 1];
    } else {
      angles[t] = std::atan2(fx, fz);
    }
  }
  return angles;
}

namespace {

std::vector<Vec3> RotateFrames(const PoseSequence& seq,
                               std::span<const double> angles, double sign) {
  std::vector<Vec3> out = seq.positions();
  const std::size_t j_count = seq.joint_count();
  for (std::size_t t = 0; t < seq.frame_count(); ++t) {
    const Vec3 root = seq.root(t);
    for (std::size_t j = 0; j < j_count; ++j) {
      Vec3& p = out[t * j_count + j];
      double x = p.x - root.x;
      double z = p.z - root.z;
      RotateY(sign * angles[t], x, z);
      p.x = root.x + x;
      p.z = root.z + z;
    }
  }
  return out;
}

}  // namespace

FacingNormalized NormalizeFacing(const PoseSequence& seq) {
  std::vector<double> angles = FacingAngles(seq);
  PoseSequence rotated(seq.skeleton(), RotateFrames(seq, angles, -1.0), seq.fps());
  return {std::move(rotated), std::move(angles)};
}

PoseSequence RestoreFacing(const PoseSequence& normalized,
                           std::span<const double> angles) {
  if (angles.size() != normalized.frame_count()) {
    throw DimensionError("restore_facing: " + std::to_string(angles.size()) +
                         " angles for " +
                         std::to_string(normalized.frame_count()) + " frames");
  }
  return PoseSequence(normalized.skeleton(),
                      RotateFrames(normalized, angles, 1.0), normalized.fps());
}

ProcessedSequence Process(const PoseSequence& seq) {
  const std::size_t frames = seq.frame_count();
  if (frames < 2) {
    throw ContractError("process needs at least 2 frames, got " +
                        std::to_string(frames));
  }
  const std::vector<double> angles = FacingAngles(seq);
  const std::size_t j_count = seq.joint_count();
  const std::size_t root = seq.skeleton().root_index();
  const std::size_t f = FeatureDim(j_count);
  std::vector<double> features(frames * f);

  for (std::size_t t = 0; t < frames; ++t) {
    double* row = features.data() + t * f;
    if (t > 0) {
      double vx = seq.root(t).x - seq.root(t - 1).x;
      double vz = seq.root(t).z - seq.root(t - 1).z;
      RotateY(-angles[t - 1], vx, vz);
      row[0] = vx;
      row[1] = vz;
      row[2] = WrapAngle(angles[t] - angles[t - 1]);
    }
    const Vec3 r = seq.root(t);
    row[3] = r.y;
    std::size_t k = kRootFeatureCount;
    for (std::size_t j = 0; j < j_count; ++j) {
      if (j == root) continue;
      const Vec3 p = seq.at(t, j);
      double x = p.x - r.x;
      double z = p.z - r.z;
      RotateY(-angles[t], x, z);
      row[k++] = x;
      row[k++] = p.y;
      row[k++] = z;
    }
  }
  for (std::size_t c = 0; c < 3; ++c) features[c] = features[f + c];

  // Integrating frame 0's (duplicated) velocity from this pose lands on the
  // true first root position.
  RootPose initial;
  initial.facing = angles[0] - features[2];
  double dx = features[0];
  double dz = features[1];
  RotateY(initial.facing, dx, dz);
  initial.x = seq.root(0).x - dx;
  initial.z = seq.root(0).z - dz;
  return ProcessedSequence(seq.skeleton(), std::move(features), seq.fps(),
                           initial);
}

PoseSequence Invert(const ProcessedSequence& proc) {
  const Skeleton& skel = proc.skeleton();
  const std::size_t j_count = skel.joint_count();
  const std::size_t root = skel.root_index();
  const std::size_t frames = proc.frame_count();
  std::vector<Vec3> positions(frames * j_count);

  double facing = proc.initial().facing;
  double rx = proc.initial().x;
  double rz = proc.initial().z;
  for (std::size_t t = 0; t < frames; ++t) {
    const auto row = proc.row(t);
    double dx = row[0];
    double dz = row[1];
    RotateY(facing, dx, dz);
    rx += dx;
    rz += dz;
    facing += row[2];

    Vec3* out = positions.data() + t * j_count;
    out[root] = {rx, row[3], rz};
    std::size_t k = kRootFeatureCount;
    for (std::size_t j = 0; j < j_count; ++j) {
      if (j == root) continue;
      double x = row[k];
      const double y = row[k + 1];
      double z = row[k + 2];
      k += 3;
      RotateY(facing, x, z);
      out[j] = {rx + x, y, rz + z};
    }
  }
  return PoseSequence(skel, std::move(positions), proc.fps());
}

PoseSequence Subsample(const PoseSequence& seq, double target_fps) {
  if (!(target_fps > 0.0)) throw ContractError("target fps must be positive");
  const double ratio = seq.fps() / target_fps;
  const double stride_d = std::round(ratio);
  if (stride_d < 1.0 || std::abs(ratio - stride_d) > 1e-9 * ratio) {
    throw ContractError("cannot subsample " + FormatRate(seq.fps()) + " to " +
                        FormatRate(target_fps) + ": stride is not an integer");
  }
  const auto stride = static_cast<std::size_t>(stride_d);
  std::vector<Vec3> kept;
  for (std::size_t t = 0; t < seq.frame_count(); t += stride) {
    const auto frame = seq.frame(t);
    kept.insert(kept.end(), frame.begin(), frame.end());
  }
  return PoseSequence(seq.skeleton(), std::move(kept), target_fps);
}

}  // namespace jl2p::pose

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

#ifndef JL2P_POSE_SKELETON_H_
#define JL2P_POSE_SKELETON_H_

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace jl2p::pose {

struct Vec3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  friend Vec3 operator+(Vec3 a, Vec3 b) { return {a.x + b.x, a.y + b.y, a.z + b.z}; }
  friend Vec3 operator-(Vec3 a, Vec3 b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }
  friend Vec3 operator*(double s, Vec3 a) { return {s * a.x, s * a.y, s * a.z}; }
  friend bool operator==(const Vec3&, const Vec3&) = default;
};

double Norm(Vec3 v);

// Joints whose ground-plane axis defines the facing direction.
struct FacingPair {
  std::size_t left = 0;
  std::size_t right = 0;
  friend bool operator==(const FacingPair&, const FacingPair&) = default;
};

class Skeleton {
 public:
  // Throws ContractError unless names are unique, J >= 2 and the root index
  // is in range. The facing pair is detected from common hip/leg names.
  Skeleton(std::vector<std::string> joint_names, std::size_t root_index);

  const std::vector<std::string>& joint_names() const { return joint_names_; }
  std::size_t root_index() const { return root_index_; }
  std::size_t joint_count() const { return joint_names_.size(); }
  std::optional<std::size_t> IndexOf(std::string_view name) const;

  const std::optional<FacingPair>& facing_pair() const { return facing_pair_; }
  void set_facing_pair(FacingPair pair);

  // "root=<name> joints=[a,b,...]"; used in compatibility errors.
  std::string Describe() const;

  friend bool operator==(const Skeleton& a, const Skeleton& b) {
    return a.joint_names_ == b.joint_names_ && a.root_index_ == b.root_index_;
  }

 private:
  std::vector<std::string> joint_names_;
  std::size_t root_index_;
  std::optional<FacingPair> facing_pair_;
};

}  // namespace jl2p::pose

#endif  // JL2P_POSE_SKELETON_H_

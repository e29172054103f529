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

#include "jl2p/pose/skeleton.h"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <set>

#include "jl2p/error.h"
#include "jl2p/pose/pose_sequence.h"

namespace jl2p::pose {
namespace {

std::string Lower(std::string_view s) {
  std::string out(s);
  for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

// Checked in order; the first pair present wins.
constexpr std::pair<const char*, const char*> kFacingCandidates[] = {
    {"l_hip", "r_hip"},         {"left_hip", "right_hip"},
    {"lhip", "rhip"},           {"leftupleg", "rightupleg"},
    {"lfemur", "rfemur"},       {"l_leg", "r_leg"},
    {"left_leg", "right_leg"},  {"lleg", "rleg"},
};

}  // namespace

double Norm(Vec3 v) { return std::sqrt(v.x * v.x + v.y * v.y + v.z * v.z); }

Skeleton::Skeleton(std::vector<std::string> joint_names, std::size_t root_index)
    : joint_names_(std::move(joint_names)), root_index_(root_index) {
  if (joint_names_.size() < 2) {
    throw ContractError("skeleton needs at least 2 joints, got " +
                        std::to_string(joint_names_.size()));
  }
  if (root_index_ >= joint_names_.size()) {
    throw ContractError("root index " + std::to_string(root_index_) +
                        " out of range for " +
                        std::to_string(joint_names_.size()) + " joints");
  }
  std::set<std::string> seen;
  for (const auto& n : joint_names_) {
    if (!seen.insert(n).second) {
      throw ContractError("duplicate joint name '" + n + "'");
    }
  }
  std::vector<std::string> lowered;
  for (const auto& n : joint_names_) lowered.push_back(Lower(n));
  for (const auto& [l, r] : kFacingCandidates) {
    auto li = std::find(lowered.begin(), lowered.end(), l);
    auto ri = std::find(lowered.begin(), lowered.end(), r);
    if (li != lowered.end() && ri != lowered.end()) {
      facing_pair_ = FacingPair{static_cast<std::size_t>(li - lowered.begin()),
                                static_cast<std::size_t>(ri - lowered.begin())};
      break;
    }
  }
}

std::optional<std::size_t> Skeleton::IndexOf(std::string_view name) const {
  for (std::size_t i = 0; i < joint_names_.size(); ++i) {
    if (joint_names_[i] == name) return i;
  }
  return std::nullopt;
}

void Skeleton::set_facing_pair(FacingPair pair) {
  if (pair.left >= joint_count() || pair.right >= joint_count() ||
      pair.left == pair.right) {
    throw ContractError("invalid facing pair");
  }
  facing_pair_ = pair;
}

std::string Skeleton::Describe() const {
  std::string s = "root=" + joint_names_[root_index_] + " joints=[";
  for (std::size_t i = 0; i < joint_names_.size(); ++i) {
    if (i > 0) s += ",";
    s += joint_names_[i];
  }
  return s + "]";
}

PoseSequence::PoseSequence(Skeleton skeleton, std::vector<Vec3> positions,
                           double fps)
    : skeleton_(std::move(skeleton)), positions_(std::move(positions)), fps_(fps) {
  const std::size_t j = skeleton_.joint_count();
  if (positions_.size() % j != 0) {
    throw DimensionError("pose sequence holds " +
                         std::to_string(positions_.size()) +
                         " positions, not a multiple of " + std::to_string(j) +
                         " joints");
  }
  if (positions_.empty()) throw ContractError("pose sequence has no frames");
  if (!(fps_ > 0.0) || !std::isfinite(fps_)) {
    throw ContractError("fps must be positive");
  }
  for (const Vec3& p : positions_) {
    if (!std::isfinite(p.x) || !std::isfinite(p.y) || !std::isfinite(p.z)) {
      throw ContractError("non-finite joint coordinate");
    }
  }
}

}  // namespace jl2p::pose

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

#include "jl2p/synth/generator.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>

#include "jl2p/error.h"
#include "jl2p/pose/preprocess.h"
#include "jl2p/random.h"

namespace jl2p::synth {
namespace {

enum Joint : std::size_t { kRoot, kTorso, kHead, kLArm, kRArm, kLLeg, kRLeg, kPelvis, kJoints };

// Rest pose, body frame: left is +X, facing +Z, heights absolute.
constexpr pose::Vec3 kRest[kJoints] = {
    {0, 1000, 0},    {0, 1350, 0},   {0, 1650, 0},  {250, 1000, 0},
    {-250, 1000, 0}, {100, 500, 0},  {-100, 500, 0}, {0, 930, 0},
};

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kCirclePeriod = 40.0;  // frames per lap

struct Gait {
  double period;
  double arm_swing;
  double leg_lift;
  double bob;
  double lean;
};

constexpr Gait kWalkGait = {12.0, 150.0, 80.0, 15.0, 0.0};
constexpr Gait kRunGait = {8.0, 250.0, 160.0, 30.0, 50.0};

double Pick(Speed s, double slow, double normal, double fast) {
  return s == Speed::kSlow ? slow : s == Speed::kFast ? fast : normal;
}

double Smoothstep(double x) {
  x = std::clamp(x, 0.0, 1.0);
  return x * x * (3.0 - 2.0 * x);
}

void ApplyGait(const Gait& g, double t, pose::Vec3* body) {
  const double s = std::sin(kTwoPi * t / g.period);
  body[kLArm].z += g.arm_swing * s;
  body[kRArm].z -= g.arm_swing * s;
  body[kLLeg].y += g.leg_lift * std::max(0.0, s);
  body[kRLeg].y += g.leg_lift * std::max(0.0, -s);
  const double bob = g.bob * std::abs(s);
  for (std::size_t j : {kRoot, kTorso, kHead, kLArm, kRArm, kPelvis}) body[j].y += bob;
  body[kTorso].z += g.lean;
  body[kHead].z += 1.6 * g.lean;
}

// Root ground position and facing at frame t.
void RootPath(const MotionSpec& spec, double t, double* x, double* z, double* facing) {
  const double v = SpeedMmPerFrame(spec.speed);
  *x = 0.0;
  *z = 0.0;
  *facing = 0.0;
  if (spec.action == Action::kTurn) {
    const double rate = Pick(spec.speed, 0.05, 0.1, 0.2);
    *facing = (spec.direction == Direction::kLeft ? 1.0 : -1.0) * rate * t;
    return;
  }
  if (spec.action != Action::kWalk && spec.action != Action::kRun) return;
  switch (spec.direction) {
    case Direction::kForward: *z = v * t; break;
    case Direction::kBackward: *z = -v * t; break;
    case Direction::kLeft: *x = v * t; break;
    case Direction::kRight: *x = -v * t; break;
    case Direction::kCircle: {
      const double omega = kTwoPi / kCirclePeriod;
      const double radius = v / omega;
      const double theta = omega * t;
      *x = radius * (1.0 - std::cos(theta));
      *z = radius * std::sin(theta);
      *facing = theta;
      break;
    }
    case Direction::kNone: break;
  }
}

std::string Join(const std::vector<std::string>& words) {
  std::string out;
  for (const auto& w : words) {
    if (w.empty()) continue;
    if (!out.empty()) out += ' ';
    out += w;
  }
  return out;
}

}  // namespace

double SpeedMmPerFrame(Speed s) { return Pick(s, 5.0, 10.0, 20.0); }

pose::Skeleton ToySkeleton() {
  return pose::Skeleton(
      {"root", "torso", "head", "l_arm", "r_arm", "l_leg", "r_leg", "pelvis"}, kRoot);
}

pose::PoseSequence GenerateMotion(const MotionSpec& spec) {
  CheckValid(spec);
  Rng rng(spec.seed);
  std::vector<pose::Vec3> positions;
  positions.reserve(spec.duration * kJoints);
  for (std::size_t frame = 0; frame < spec.duration; ++frame) {
    const double t = static_cast<double>(frame);
    pose::Vec3 body[kJoints];
    std::copy(std::begin(kRest), std::end(kRest), body);
    switch (spec.action) {
      case Action::kWalk: ApplyGait(kWalkGait, t, body); break;
      case Action::kRun: ApplyGait(kRunGait, t, body); break;
      case Action::kTurn: {
        const double s = std::sin(kTwoPi * t / 12.0);
        body[kLLeg].y += 40.0 * std::max(0.0, s);
        body[kRLeg].y += 40.0 * std::max(0.0, -s);
        break;
      }
      case Action::kWave: {
        const double period = Pick(spec.speed, 16.0, 10.0, 6.0);
        body[kRArm] = {-300.0 + 120.0 * std::sin(kTwoPi * t / period), 1750.0, 50.0};
        break;
      }
      case Action::kKneel: {
        const double ramp = Pick(spec.speed, 24.0, 16.0, 8.0);
        const double k = Smoothstep(t / ramp);
        for (std::size_t j : {kRoot, kTorso, kHead, kLArm, kRArm, kPelvis}) {
          body[j].y -= 400.0 * k;
        }
        for (std::size_t j : {kLLeg, kRLeg}) {
          body[j].y -= 400.0 * k;
          body[j].z += 150.0 * k;
        }
        break;
      }
      case Action::kStand: break;
    }
    double rx = 0.0, rz = 0.0, facing = 0.0;
    RootPath(spec, t, &rx, &rz, &facing);
    for (const auto& p : body) {
      double ox = p.x, oz = p.z;
      pose::RotateY(facing, ox, oz);
      positions.push_back({rx + ox + rng.Normal(0.0, kNoiseStddevMm),
                           p.y + rng.Normal(0.0, kNoiseStddevMm),
                           rz + oz + rng.Normal(0.0, kNoiseStddevMm)});
    }
  }
  return pose::PoseSequence(ToySkeleton(), std::move(positions), kSynthFps);
}

std::vector<std::string> GenerateSentences(const MotionSpec& spec) {
  CheckValid(spec);
  const std::string adverb1 = spec.speed == Speed::kSlow   ? "slowly"
                              : spec.speed == Speed::kFast ? "fast"
                                                           : "";
  const std::string adverb2 = spec.speed == Speed::kSlow   ? "slowly"
                              : spec.speed == Speed::kFast ? "quickly"
                                                           : "";
  std::string dir1, dir2;
  switch (spec.direction) {
    case Direction::kForward: dir1 = "forward"; dir2 = "ahead"; break;
    case Direction::kBackward: dir1 = "backward"; dir2 = "backwards"; break;
    case Direction::kLeft: dir1 = "to the left"; dir2 = "leftwards"; break;
    case Direction::kRight: dir1 = "to the right"; dir2 = "rightwards"; break;
    case Direction::kCircle: dir1 = "in a circle"; dir2 = "around in a circle"; break;
    case Direction::kNone: break;
  }
  switch (spec.action) {
    case Action::kWalk:
    case Action::kRun: {
      const std::string verb = spec.action == Action::kWalk ? "walks" : "runs";
      return {Join({"a person", verb, dir1, adverb1}),
              Join({"someone", adverb2, verb, dir2})};
    }
    case Action::kTurn:
      return {Join({"a person turns", dir1, adverb1}),
              Join({"someone", adverb2, "turns around", dir1})};
    case Action::kWave:
      return {Join({"a person waves with the right hand", adverb1}),
              Join({"someone", adverb2, "waves"})};
    case Action::kKneel:
      return {Join({"a person kneels down", adverb1}),
              Join({"someone", adverb2, "kneels"})};
    case Action::kStand:
      return {"a person stands still", "someone is standing in place"};
  }
  return {};
}

std::vector<pose::Clip> SyntheticCorpus::Clips() const {
  std::vector<pose::Clip> out;
  out.reserve(clips.size());
  for (const auto& c : clips) out.push_back(c.clip);
  return out;
}

SyntheticCorpus BuildCorpus(std::size_t n_clips, std::uint64_t seed,
                            std::size_t duration) {
  if (n_clips < kMotionClassCount) {
    throw ContractError("synthetic corpus needs at least " +
                        std::to_string(kMotionClassCount) + " clips, got " +
                        std::to_string(n_clips));
  }
  std::vector<MotionSpec> order = {
      {Action::kWalk, Direction::kForward, Speed::kNormal, duration, 0},
      {Action::kWalk, Direction::kCircle, Speed::kNormal, duration, 0},
      {Action::kRun, Direction::kForward, Speed::kNormal, duration, 0},
      {Action::kRun, Direction::kCircle, Speed::kNormal, duration, 0},
      {Action::kTurn, Direction::kLeft, Speed::kNormal, duration, 0},
      {Action::kWave, Direction::kNone, Speed::kNormal, duration, 0},
      {Action::kKneel, Direction::kNone, Speed::kNormal, duration, 0},
      {Action::kStand, Direction::kNone, Speed::kNormal, duration, 0},
  };
  const std::vector<MotionSpec> grid = AllSpecs(duration);
  Rng rng(DeriveSeed(seed, 0x5717));
  while (order.size() < n_clips) {
    std::vector<MotionSpec> round = grid;
    for (std::size_t i = round.size(); i > 1; --i) {
      std::swap(round[i - 1], round[rng.UniformInt(i)]);
    }
    order.insert(order.end(), round.begin(), round.end());
  }
  order.resize(n_clips);

  SyntheticCorpus corpus;
  corpus.clips.reserve(n_clips);
  for (std::size_t i = 0; i < n_clips; ++i) {
    MotionSpec spec = order[i];
    spec.seed = DeriveSeed(seed, i);
    char id[32];
    std::snprintf(id, sizeof(id), "synth_%04zu_", i);
    corpus.clips.push_back(
        {spec, pose::Clip{id + SpecLabel(spec), GenerateSentences(spec),
                          GenerateMotion(spec)}});
  }
  return corpus;
}

}  // namespace jl2p::synth

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

#ifndef JL2P_SYNTH_GENERATOR_H_
#define JL2P_SYNTH_GENERATOR_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "jl2p/pose/corpus.h"
#include "jl2p/synth/motion_spec.h"

namespace jl2p::synth {

inline constexpr double kSynthFps = 12.5;
inline constexpr double kNoiseStddevMm = 1.0;

// Root speed in mm per frame: 5 / 10 / 20.
double SpeedMmPerFrame(Speed s);

// root, torso, head, l_arm, r_arm, l_leg, r_leg, pelvis; root first.
pose::Skeleton ToySkeleton();

// Analytic motion plus seeded N(0, 1 mm) jitter on every coordinate.
// Deterministic per (spec, seed). Throws ContractError for invalid specs.
pose::PoseSequence GenerateMotion(const MotionSpec& spec);

// Two paraphrases, deterministic per spec (the seed is ignored).
std::vector<std::string> GenerateSentences(const MotionSpec& spec);

struct SyntheticClip {
  MotionSpec spec;
  pose::Clip clip;
};

struct SyntheticCorpus {
  std::vector<SyntheticClip> clips;

  std::vector<pose::Clip> Clips() const;
};

// The first eight clips cover every motion class; the rest cycle through
// seeded shuffles of the full spec grid. Clip i's noise seed is derived from
// (seed, i). Throws ContractError for n_clips < 8.
SyntheticCorpus BuildCorpus(std::size_t n_clips, std::uint64_t seed,
                            std::size_t duration = kDefaultDuration);

}  // namespace jl2p::synth

#endif  // JL2P_SYNTH_GENERATOR_H_

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

#ifndef JL2P_POSE_CORPUS_H_
#define JL2P_POSE_CORPUS_H_

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "jl2p/pose/pose_sequence.h"

namespace jl2p::pose {

inline constexpr int kCorpusSchemaVersion = 1;

// One motion clip with its descriptions. Each sentence forms a separate
// (sentence, clip) training pair.
struct Clip {
  std::string id;
  std::vector<std::string> sentences;
  PoseSequence motion;
};

// JSON-lines corpus, one record per clip:
//   {"schema_version", "id", "sentences", "fps", "joint_names",
//    "root_index", "frames": [[[x, y, z] x J] x T]}
// schema_version is optional on input. Parse failures throw ParseError
// carrying the 1-based line number.
std::vector<Clip> ReadCorpus(std::istream& in);
std::vector<Clip> ReadCorpusFile(const std::string& path);

std::string ClipToJsonLine(const Clip& clip);
void WriteCorpus(std::ostream& out, std::span<const Clip> clips);
void WriteCorpusFile(const std::string& path, std::span<const Clip> clips);

}  // namespace jl2p::pose

#endif  // JL2P_POSE_CORPUS_H_

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

#include "jl2p/pose/corpus.h"

#include <fstream>
#include <istream>
#include <ostream>
#include <set>

#include "jl2p/error.h"
#include "json.hpp"

namespace jl2p::pose {
namespace {

using nlohmann::json;
using nlohmann::ordered_json;

Clip ParseClip(const json& rec) {
  if (rec.contains("schema_version") &&
      rec.at("schema_version").get<int>() != kCorpusSchemaVersion) {
    throw ParseError("unsupported corpus schema_version");
  }
  auto names = rec.at("joint_names").get<std::vector<std::string>>();
  const auto root = rec.at("root_index").get<std::size_t>();
  Skeleton skeleton(std::move(names), root);
  const std::size_t j_count = skeleton.joint_count();
  std::vector<Vec3> positions;
  for (const auto& frame : rec.at("frames")) {
    if (frame.size() != j_count) {
      throw ParseError("frame has " + std::to_string(frame.size()) +
                       " joints, expected " + std::to_string(j_count));
    }
    for (const auto& p : frame) {
      if (p.size() != 3) throw ParseError("joint position must have 3 values");
      positions.push_back({p[0].get<double>(), p[1].get<double>(),
                           p[2].get<double>()});
    }
  }
  Clip clip{rec.at("id").get<std::string>(),
            rec.at("sentences").get<std::vector<std::string>>(),
            PoseSequence(std::move(skeleton), std::move(positions),
                         rec.at("fps").get<double>())};
  if (clip.sentences.empty()) throw ParseError("clip has no sentences");
  return clip;
}

}  // namespace

std::vector<Clip> ReadCorpus(std::istream& in) {
  std::vector<Clip> clips;
  std::set<std::string> ids;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      Clip clip = ParseClip(json::parse(line));
      if (!ids.insert(clip.id).second) {
        throw ParseError("duplicate clip id '" + clip.id + "'");
      }
      clips.push_back(std::move(clip));
    } catch (const json::exception& e) {
      throw ParseError("corpus line " + std::to_string(line_no) + ": " + e.what());
    } catch (const Error& e) {
      throw ParseError("corpus line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  return clips;
}

std::vector<Clip> ReadCorpusFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open corpus file '" + path + "'");
  return ReadCorpus(in);
}

std::string ClipToJsonLine(const Clip& clip) {
  const PoseSequence& m = clip.motion;
  ordered_json rec;
  rec["schema_version"] = kCorpusSchemaVersion;
  rec["id"] = clip.id;
  rec["sentences"] = clip.sentences;
  rec["fps"] = m.fps();
  rec["joint_names"] = m.skeleton().joint_names();
  rec["root_index"] = m.skeleton().root_index();
  ordered_json frames = ordered_json::array();
  for (std::size_t t = 0; t < m.frame_count(); ++t) {
    ordered_json frame = ordered_json::array();
    for (const Vec3& p : m.frame(t)) frame.push_back({p.x, p.y, p.z});
    frames.push_back(std::move(frame));
  }
  rec["frames"] = std::move(frames);
  return rec.dump();
}

void WriteCorpus(std::ostream& out, std::span<const Clip> clips) {
  for (const Clip& c : clips) out << ClipToJsonLine(c) << '\n';
}

void WriteCorpusFile(const std::string& path, std::span<const Clip> clips) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write corpus file '" + path + "'");
  WriteCorpus(out, clips);
  if (!out) throw Error("failed writing corpus file '" + path + "'");
}

}  // namespace jl2p::pose

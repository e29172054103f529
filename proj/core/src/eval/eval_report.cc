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

#include "jl2p/eval/eval_report.h"

#include <algorithm>
#include <set>
#include <sstream>

#include "jl2p/error.h"
#include "json.hpp"

namespace jl2p::eval {

EvalAccumulator::EvalAccumulator(pose::Skeleton skeleton, double fps,
                                 std::vector<double> sigmas)
    : skeleton_(std::move(skeleton)),
      fps_(fps),
      sigmas_(std::move(sigmas)),
      groups_(DefaultPartGroups(skeleton_)),
      joint_error_sum_(skeleton_.joint_count(), 0.0),
      pck_hits_(sigmas_.size(), 0) {
  if (!(fps_ > 0.0)) throw ContractError("fps must be positive");
  for (double s : sigmas_) {
    if (!(s > 0.0)) throw ContractError("PCK threshold must be positive");
  }
  if (!std::is_sorted(sigmas_.begin(), sigmas_.end())) {
    throw ContractError("PCK thresholds must be ascending");
  }
}

void EvalAccumulator::Add(const std::string& clip_id, const std::string& sentence,
                          const pose::PoseSequence& pred,
                          const pose::PoseSequence& truth) {
  if (!(pred.skeleton() == skeleton_)) {
    throw ContractError("skeleton mismatch: " + pred.skeleton().Describe() +
                        " vs " + skeleton_.Describe());
  }
  ClipResult clip;
  clip.clip_id = clip_id;
  clip.sentence = sentence;
  clip.frames = pred.frame_count();
  clip.per_joint_ape = ApePerJoint(pred, truth);  // checks comparability
  double sum = 0.0;
  for (double v : clip.per_joint_ape) sum += v;
  clip.mean_ape = sum / static_cast<double>(clip.per_joint_ape.size());

  const std::size_t frames = pred.frame_count();
  for (std::size_t j = 0; j < joint_error_sum_.size(); ++j) {
    joint_error_sum_[j] += clip.per_joint_ape[j] * static_cast<double>(frames);
  }
  frame_total_ += frames;

  const auto& a = pred.positions();
  const auto& b = truth.positions();
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = pose::Norm(a[i] - b[i]);
    for (std::size_t k = 0; k < sigmas_.size(); ++k) {
      if (d <= sigmas_[k]) ++pck_hits_[k];
    }
  }

  const auto curves = ApeByPartOverTime(pred, truth, groups_);
  if (part_sum_.size() < frames) {
    part_sum_.resize(frames, std::vector<double>(groups_.size(), 0.0));
    part_count_.resize(frames, 0);
  }
  for (std::size_t t = 0; t < frames; ++t) {
    for (std::size_t g = 0; g < groups_.size(); ++g) part_sum_[t][g] += curves[t][g];
    ++part_count_[t];
  }
  clips_.push_back(std::move(clip));
}

EvalReport EvalAccumulator::Finish() const {
  if (clips_.empty()) throw ContractError("no pairs were evaluated");
  EvalReport r;
  r.joint_names = skeleton_.joint_names();
  r.root_index = skeleton_.root_index();
  r.fps = fps_;
  const double n = static_cast<double>(frame_total_);
  double total = 0.0;
  double non_root = 0.0;
  for (std::size_t j = 0; j < joint_error_sum_.size(); ++j) {
    const double v = joint_error_sum_[j] / n;
    r.per_joint_ape.push_back(v);
    total += v;
    if (j != r.root_index) non_root += v;
  }
  const double joints = static_cast<double>(r.per_joint_ape.size());
  r.mean_ape = total / joints;
  r.mean_ape_without_root = non_root / (joints - 1.0);

  const double keypoints = n * joints;
  for (std::size_t k = 0; k < sigmas_.size(); ++k) {
    r.pck.emplace_back(sigmas_[k], static_cast<double>(pck_hits_[k]) / keypoints);
  }
  for (const auto& g : groups_) r.part_names.push_back(g.name);
  for (std::size_t t = 0; t < part_sum_.size(); ++t) {
    std::vector<double> row(groups_.size());
    for (std::size_t g = 0; g < row.size(); ++g) {
      row[g] = part_sum_[t][g] / static_cast<double>(part_count_[t]);
    }
    r.ape_by_part_over_time.push_back(std::move(row));
  }
  std::set<std::string> ids;
  for (const auto& c : clips_) ids.insert(c.clip_id);
  r.clip_count = ids.size();
  r.pair_count = clips_.size();
  r.clips = clips_;
  return r;
}

std::string EvalReportToJson(const EvalReport& r) {
  nlohmann::ordered_json j;
  j["schema_version"] = kEvalReportSchemaVersion;
  j["clip_count"] = r.clip_count;
  j["pair_count"] = r.pair_count;
  j["fps"] = r.fps;
  j["joint_names"] = r.joint_names;
  j["root_index"] = r.root_index;
  j["mean_ape_mm"] = r.mean_ape;
  j["mean_ape_without_root_mm"] = r.mean_ape_without_root;
  nlohmann::ordered_json per_joint = nlohmann::ordered_json::object();
  for (std::size_t i = 0; i < r.per_joint_ape.size(); ++i) {
    per_joint[r.joint_names[i]] = r.per_joint_ape[i];
  }
  j["per_joint_ape_mm"] = per_joint;
  auto pck = nlohmann::ordered_json::array();
  for (const auto& [sigma, p] : r.pck) pck.push_back({{"sigma_mm", sigma}, {"pck", p}});
  j["pck"] = pck;
  j["parts"] = r.part_names;
  j["ape_by_part_over_time_mm"] = r.ape_by_part_over_time;
  auto clips = nlohmann::ordered_json::array();
  for (const auto& c : r.clips) {
    clips.push_back({{"clip_id", c.clip_id},
                     {"sentence", c.sentence},
                     {"frames", c.frames},
                     {"mean_ape_mm", c.mean_ape},
                     {"per_joint_ape_mm", c.per_joint_ape}});
  }
  j["clips"] = clips;
  return j.dump(2) + "\n";
}

namespace {

std::string Num(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

}  // namespace

std::string PckCsv(const EvalReport& r) {
  std::string out = "sigma_mm,pck\n";
  for (const auto& [sigma, p] : r.pck) out += Num(sigma) + "," + Num(p) + "\n";
  return out;
}

std::string ApeOverTimeCsv(const EvalReport& r) {
  std::string out = "timestep_ms,part,ape_mm\n";
  for (std::size_t t = 0; t < r.ape_by_part_over_time.size(); ++t) {
    const std::string ms = Num(static_cast<double>(t) * 1000.0 / r.fps);
    for (std::size_t g = 0; g < r.part_names.size(); ++g) {
      out += ms + "," + r.part_names[g] + "," + Num(r.ape_by_part_over_time[t][g]) + "\n";
    }
  }
  return out;
}

}  // namespace jl2p::eval

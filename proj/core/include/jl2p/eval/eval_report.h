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

#ifndef JL2P_EVAL_EVAL_REPORT_H_
#define JL2P_EVAL_EVAL_REPORT_H_

#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "jl2p/eval/metrics.h"

namespace jl2p::eval {

inline constexpr int kEvalReportSchemaVersion = 1;

// Raw per-pair numbers, kept so external tools can run significance tests.
struct ClipResult {
  std::string clip_id;
  std::string sentence;
  std::size_t frames = 0;
  double mean_ape = 0.0;
  std::vector<double> per_joint_ape;
};

struct EvalReport {
  std::vector<std::string> joint_names;
  std::size_t root_index = 0;
  double fps = 0.0;
  std::vector<double> per_joint_ape;
  double mean_ape = 0.0;
  double mean_ape_without_root = 0.0;
  std::vector<std::pair<double, double>> pck;  // (sigma mm, probability)
  std::vector<std::string> part_names;
  std::vector<std::vector<double>> ape_by_part_over_time;  // [t][part]
  std::size_t clip_count = 0;  // distinct clip ids
  std::size_t pair_count = 0;  // evaluated (sentence, clip) pairs
  std::vector<ClipResult> clips;
};

// Pools errors over many (prediction, truth) pairs. Every frame counts once
// in the per-joint and PCK aggregates; per-timestep curves average the pairs
// that reach that timestep.
class EvalAccumulator {
 public:
  EvalAccumulator(pose::Skeleton skeleton, double fps,
                  std::vector<double> sigmas = kDefaultPckSigmas);

  void Add(const std::string& clip_id, const std::string& sentence,
           const pose::PoseSequence& pred, const pose::PoseSequence& truth);

  EvalReport Finish() const;

 private:
  pose::Skeleton skeleton_;
  double fps_;
  std::vector<double> sigmas_;
  std::vector<PartGroup> groups_;
  std::vector<double> joint_error_sum_;
  std::size_t frame_total_ = 0;
  std::vector<std::size_t> pck_hits_;
  std::vector<std::vector<double>> part_sum_;  // [t][part]
  std::vector<std::size_t> part_count_;        // pairs reaching t
  std::vector<ClipResult> clips_;
};

std::string EvalReportToJson(const EvalReport& report);
// Columns sigma_mm,pck.
std::string PckCsv(const EvalReport& report);
// Columns timestep_ms,part,ape_mm.
std::string ApeOverTimeCsv(const EvalReport& report);

}  // namespace jl2p::eval

#endif  // JL2P_EVAL_EVAL_REPORT_H_

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

#include "jl2p/train/curriculum.h"

#include <string>

#include "jl2p/error.h"

namespace jl2p::train {

std::vector<std::size_t> CurriculumSchedule(std::size_t max_t, bool enabled) {
  if (max_t < 2) {
    throw ContractError("max_t must be >= 2, got " + std::to_string(max_t));
  }
  if (!enabled) return {max_t};
  std::vector<std::size_t> schedule;
  for (std::size_t t = 2; t < max_t; t *= 2) schedule.push_back(t);
  schedule.push_back(max_t);
  return schedule;
}

CurriculumState::CurriculumState(std::vector<std::size_t> schedule, int patience)
    : schedule_(std::move(schedule)), patience_(patience) {
  if (schedule_.empty()) throw ContractError("empty curriculum schedule");
  if (patience_ < 1) throw ContractError("patience must be >= 1");
}

bool CurriculumState::ObserveValidation(double val_loss) {
  if (finished()) throw ContractError("curriculum already finished");
  ++epochs_;
  last_ = val_loss;
  if (val_loss < best_) {
    best_ = val_loss;
    bad_epochs_ = 0;
  } else {
    ++bad_epochs_;
  }
  return bad_epochs_ >= patience_;
}

void CurriculumState::Advance() {
  if (finished()) throw ContractError("curriculum already finished");
  history_.push_back({schedule_[stage_], epochs_, last_});
  ++stage_;
  best_ = std::numeric_limits<double>::infinity();
  bad_epochs_ = 0;
  epochs_ = 0;
  last_ = 0.0;
}

}  // namespace jl2p::train

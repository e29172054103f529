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

#ifndef JL2P_TRAIN_CURRICULUM_H_
#define JL2P_TRAIN_CURRICULUM_H_

#include <cstddef>
#include <limits>
#include <vector>

namespace jl2p::train {

// Prediction horizons 2, 4, 8, ... with the last stage clamped to exactly
// max_t. With the curriculum disabled there is a single stage at max_t.
// Throws ContractError for max_t < 2.
std::vector<std::size_t> CurriculumSchedule(std::size_t max_t, bool enabled);

// Walks a schedule, deciding when each stage ends. A stage ends once the
// validation loss has failed to improve on the stage's best for `patience`
// consecutive epochs. The best value restarts at +inf on every stage.
class CurriculumState {
 public:
  struct StageRecord {
    std::size_t t = 0;
    int epochs = 0;
    double final_val_loss = 0.0;
  };

  CurriculumState(std::vector<std::size_t> schedule, int patience);

  bool finished() const { return stage_ >= schedule_.size(); }
  std::size_t current_t() const { return schedule_.at(stage_); }
  std::size_t stage_index() const { return stage_; }
  double best_val_loss() const { return best_; }
  const std::vector<std::size_t>& schedule() const { return schedule_; }
  const std::vector<StageRecord>& history() const { return history_; }

  // Records one epoch; returns true when the stop rule fires.
  bool ObserveValidation(double val_loss);
  // Closes the current stage and moves to the next one.
  void Advance();

 private:
  std::vector<std::size_t> schedule_;
  int patience_;
  std::size_t stage_ = 0;
  double best_ = std::numeric_limits<double>::infinity();
  int bad_epochs_ = 0;
  int epochs_ = 0;
  double last_ = 0.0;
  std::vector<StageRecord> history_;
};

}  // namespace jl2p::train

#endif  // JL2P_TRAIN_CURRICULUM_H_

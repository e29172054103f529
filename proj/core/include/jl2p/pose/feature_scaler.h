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

#ifndef JL2P_POSE_FEATURE_SCALER_H_
#define JL2P_POSE_FEATURE_SCALER_H_

#include <cstddef>
#include <span>
#include <vector>

#include "jl2p/pose/preprocess.h"

namespace jl2p::pose {

// Per-feature standardization fitted on training sequences. The networks see
// (x - mean) / scale; outputs are mapped back before inversion.
class FeatureScaler {
 public:
  FeatureScaler() = default;
  FeatureScaler(std::vector<double> mean, std::vector<double> scale);

  // Standard deviations below `min_scale` are replaced by 1.
  static FeatureScaler Fit(std::span<const ProcessedSequence> sequences,
                           double min_scale = 1e-6);
  static FeatureScaler Identity(std::size_t dim);

  std::size_t dim() const { return mean_.size(); }
  const std::vector<double>& mean() const { return mean_; }
  const std::vector<double>& scale() const { return scale_; }

  // Operate on row-major T x F buffers.
  std::vector<double> Normalize(std::span<const double> features) const;
  std::vector<double> Denormalize(std::span<const double> features) const;

 private:
  std::vector<double> mean_;
  std::vector<double> scale_;
};

}  // namespace jl2p::pose

#endif  // JL2P_POSE_FEATURE_SCALER_H_

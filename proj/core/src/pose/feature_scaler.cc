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

#include "jl2p/pose/feature_scaler.h"

#include <cmath>

#include "jl2p/error.h"

namespace jl2p::pose {

FeatureScaler::FeatureScaler(std::vector<double> mean, std::vector<double> scale)
    : mean_(std::move(mean)), scale_(std::move(scale)) {
  if (mean_.size() != scale_.size()) {
    throw DimensionError("scaler mean/scale lengths differ");
  }
  for (double s : scale_) {
    if (!(s > 0.0) || !std::isfinite(s)) {
      throw ContractError("scaler scale must be positive and finite");
    }
  }
}

FeatureScaler FeatureScaler::Fit(std::span<const ProcessedSequence> sequences,
                                 double min_scale) {
  if (sequences.empty()) throw ContractError("cannot fit scaler on no data");
  const std::size_t f = sequences.front().feature_dim();
  std::vector<double> sum(f, 0.0);
  std::size_t rows = 0;
  for (const auto& seq : sequences) {
    if (seq.feature_dim() != f) {
      throw DimensionError("scaler fit: mixed feature dimensions");
    }
    for (std::size_t t = 0; t < seq.frame_count(); ++t) {
      const auto row = seq.row(t);
      for (std::size_t c = 0; c < f; ++c) sum[c] += row[c];
    }
    rows += seq.frame_count();
  }
  std::vector<double> mean(f);
  for (std::size_t c = 0; c < f; ++c) mean[c] = sum[c] / static_cast<double>(rows);
  std::vector<double> var(f, 0.0);
  for (const auto& seq : sequences) {
    for (std::size_t t = 0; t < seq.frame_count(); ++t) {
      const auto row = seq.row(t);
      for (std::size_t c = 0; c < f; ++c) {
        const double d = row[c] - mean[c];
        var[c] += d * d;
      }
    }
  }
  std::vector<double> scale(f);
  for (std::size_t c = 0; c < f; ++c) {
    const double sd = std::sqrt(var[c] / static_cast<double>(rows));
    scale[c] = sd < min_scale ? 1.0 : sd;
  }
  return FeatureScaler(std::move(mean), std::move(scale));
}

FeatureScaler FeatureScaler::Identity(std::size_t dim) {
  return FeatureScaler(std::vector<double>(dim, 0.0), std::vector<double>(dim, 1.0));
}

std::vector<double> FeatureScaler::Normalize(std::span<const double> features) const {
  if (dim() == 0 || features.size() % dim() != 0) {
    throw DimensionError("scaler: buffer is not a multiple of F=" +
                         std::to_string(dim()));
  }
  std::vector<double> out(features.size());
  for (std::size_t i = 0; i < features.size(); ++i) {
    const std::size_t c = i % dim();
    out[i] = (features[i] - mean_[c]) / scale_[c];
  }
  return out;
}

std::vector<double> FeatureScaler::Denormalize(std::span<const double> features) const {
  if (dim() == 0 || features.size() % dim() != 0) {
    throw DimensionError("scaler: buffer is not a multiple of F=" +
                         std::to_string(dim()));
  }
  std::vector<double> out(features.size());
  for (std::size_t i = 0; i < features.size(); ++i) {
    const std::size_t c = i % dim();
    out[i] = features[i] * scale_[c] + mean_[c];
  }
  return out;
}

}  // namespace jl2p::pose

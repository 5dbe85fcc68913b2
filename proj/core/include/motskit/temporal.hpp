// Copyright 2026 The motskit Authors
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

#ifndef MOTSKIT_TEMPORAL_HPP_
#define MOTSKIT_TEMPORAL_HPP_

#include <vector>

namespace mots {

// Dense feature tensor in channel-major (CHW) layout.
struct FeatureMap {
  int channels = 0;
  int height = 0;
  int width = 0;
  std::vector<double> values;

  FeatureMap() = default;
  FeatureMap(int c, int h, int w)
      : channels(c),
        height(h),
        width(w),
        values(static_cast<std::size_t>(c) * h * w, 0.0) {}

  double& at(int c, int y, int x) {
    return values[(static_cast<std::size_t>(c) * height + y) * width + x];
  }
  double at(int c, int y, int x) const {
    return values[(static_cast<std::size_t>(c) * height + y) * width + x];
  }
};

// Per-pixel displacement field. Backward-warping convention: flow at pixel
// p points to the offset of p's source location in the frame being warped.
struct FlowField {
  int height = 0;
  int width = 0;
  std::vector<double> dx;
  std::vector<double> dy;

  FlowField() = default;
  FlowField(int h, int w)
      : height(h),
        width(w),
        dx(static_cast<std::size_t>(h) * w, 0.0),
        dy(static_cast<std::size_t>(h) * w, 0.0) {}

  std::size_t index(int y, int x) const {
    return static_cast<std::size_t>(y) * width + x;
  }
};

// Number of frames, including the current one, that participate in
// temporal aggregation.
inline constexpr int kTemporalRange = 3;

// Bilinear backward warp: output(p) samples source at p + flow(p), with
// sample coordinates clamped to the image bounds (edge clamping). Zero
// flow is an exact identity and integer flows reduce to pure indexing.
FeatureMap warp(const FeatureMap& source, const FlowField& flow);

// Elementwise weighted mean of {current} + warped. An empty weight vector
// means uniform weights; otherwise it must carry one positive-sum entry
// per map, current first. The warped list is limited to
// temporal_range - 1 maps.
FeatureMap aggregate(const FeatureMap& current,
                     const std::vector<FeatureMap>& warped,
                     const std::vector<double>& weights = {},
                     int temporal_range = kTemporalRange);

}  // namespace mots

#endif  // MOTSKIT_TEMPORAL_HPP_

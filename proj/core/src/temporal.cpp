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

#include "motskit/temporal.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace mots {

FeatureMap warp(const FeatureMap& source, const FlowField& flow) {
  if (source.height != flow.height || source.width != flow.width) {
    throw std::invalid_argument("warp: feature/flow dimension mismatch");
  }
  if (source.channels < 1) {
    throw std::invalid_argument("warp: feature map needs >= 1 channel");
  }
  FeatureMap out(source.channels, source.height, source.width);
  const int h = source.height;
  const int w = source.width;
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      const std::size_t i = flow.index(y, x);
      double sx = static_cast<double>(x) + flow.dx[i];
      double sy = static_cast<double>(y) + flow.dy[i];
      sx = std::clamp(sx, 0.0, static_cast<double>(w - 1));
      sy = std::clamp(sy, 0.0, static_cast<double>(h - 1));
      const int x0 = static_cast<int>(std::floor(sx));
      const int y0 = static_cast<int>(std::floor(sy));
      const int x1 = std::min(x0 + 1, w - 1);
      const int y1 = std::min(y0 + 1, h - 1);
      const double fx = sx - x0;
      const double fy = sy - y0;
      for (int c = 0; c < source.channels; ++c) {
        const double top =
            source.at(c, y0, x0) * (1.0 - fx) + source.at(c, y0, x1) * fx;
        const double bot =
            source.at(c, y1, x0) * (1.0 - fx) + source.at(c, y1, x1) * fx;
        out.at(c, y, x) = top * (1.0 - fy) + bot * fy;
      }
    }
  }
  return out;
}

FeatureMap aggregate(const FeatureMap& current,
                     const std::vector<FeatureMap>& warped,
                     const std::vector<double>& weights, int temporal_range) {
  if (temporal_range < 1) {
    throw std::invalid_argument("aggregate: temporal_range must be >= 1");
  }
  if (static_cast<int>(warped.size()) > temporal_range - 1) {
    throw std::invalid_argument(
        "aggregate: more warped maps than temporal_range allows");
  }
  for (const FeatureMap& m : warped) {
    if (m.channels != current.channels || m.height != current.height ||
        m.width != current.width) {
      throw std::invalid_argument("aggregate: shape mismatch");
    }
  }
  std::vector<double> w = weights;
  if (w.empty()) {
    w.assign(warped.size() + 1, 1.0);
  } else if (w.size() != warped.size() + 1) {
    throw std::invalid_argument(
        "aggregate: need one weight per map, current first");
  }
  double wsum = 0.0;
  for (double v : w) {
    if (!(v >= 0.0) || !std::isfinite(v)) {
      throw std::invalid_argument("aggregate: weights must be non-negative");
    }
    wsum += v;
  }
  if (!(wsum > 0.0)) {
    throw std::invalid_argument("aggregate: weights must not all be zero");
  }

  // Accumulate deviations from `current` instead of raw values: identical
  // inputs then cancel exactly, which makes the mean bitwise idempotent.
  FeatureMap out = current;
  for (std::size_t i = 0; i < out.values.size(); ++i) {
    double acc = 0.0;
    for (std::size_t m = 0; m < warped.size(); ++m) {
      acc += w[m + 1] * (warped[m].values[i] - current.values[i]);
    }
    out.values[i] = current.values[i] + acc / wsum;
  }
  return out;
}

}  // namespace mots

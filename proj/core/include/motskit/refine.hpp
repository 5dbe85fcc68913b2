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

#ifndef MOTSKIT_REFINE_HPP_
#define MOTSKIT_REFINE_HPP_

#include <vector>

#include "motskit/mask.hpp"

namespace mots {

// Single-channel double-precision image planes. DepthMap carries
// disparity-like relative depth (larger = nearer); SoftMask carries
// per-pixel foreground probabilities in [0, 1].
struct DepthMap {
  int height = 0;
  int width = 0;
  std::vector<double> values;

  DepthMap() = default;
  DepthMap(int h, int w)
      : height(h),
        width(w),
        values(static_cast<std::size_t>(h) * static_cast<std::size_t>(w),
               0.0) {}

  double& at(int row, int col) {
    return values[static_cast<std::size_t>(row) * width + col];
  }
  double at(int row, int col) const {
    return values[static_cast<std::size_t>(row) * width + col];
  }
};

struct SoftMask {
  int height = 0;
  int width = 0;
  std::vector<double> values;

  SoftMask() = default;
  SoftMask(int h, int w)
      : height(h),
        width(w),
        values(static_cast<std::size_t>(h) * static_cast<std::size_t>(w),
               0.0) {}

  double& at(int row, int col) {
    return values[static_cast<std::size_t>(row) * width + col];
  }
  double at(int row, int col) const {
    return values[static_cast<std::size_t>(row) * width + col];
  }
};

// Integer pixel rectangle, half-open: columns [x0, x1), rows [y0, y1).
struct Roi {
  int x0 = 0;
  int y0 = 0;
  int x1 = 0;
  int y1 = 0;

  int width() const { return x1 - x0; }
  int height() const { return y1 - y0; }
  bool empty() const { return x1 <= x0 || y1 <= y0; }

  bool operator==(const Roi& other) const = default;
};

// Depth-granularity parameters.
struct DgmParams {
  int k = 2;               // sub-regions per RoI axis
  double tau_prod = 0.25;  // binarization threshold on the product B * D_hat
};

// Expands a float box outward to integer pixel bounds (floor the mins,
// ceil the maxes), then clips against the image. Throws
// std::invalid_argument when the clipped RoI is empty.
Roi clip_box_to_image(const BBox& box, int image_height, int image_width);

DepthMap crop(const DepthMap& image, const Roi& roi);
SoftMask crop(const SoftMask& image, const Roi& roi);

// Patch cropped out of a frame-sized plane together with the RoI it came
// from, so it can be pasted back at the recorded offset.
struct DepthPatch {
  Roi roi;
  DepthMap values;
};
struct SoftPatch {
  Roi roi;
  SoftMask values;
};

// crop + clip_box_to_image in one step, keeping the placement offset.
DepthPatch crop_roi(const DepthMap& image, const BBox& box);
SoftPatch crop_roi(const SoftMask& image, const BBox& box);

// Splits a height x width patch into a k x k grid of half-open tiles in
// patch-local coordinates, returned in row-major grid order. Each axis is
// divided into floor(extent / k) cells with the remainder folded into the
// last row/column, so tiles other than the last can be empty when k
// exceeds the extent.
std::vector<Roi> subdivide(int height, int width, int k);

// Min-max normalization of a depth patch to [0, 1]. A constant patch maps
// to all ones so that flat-depth regions keep their base mask unchanged.
// Non-finite values raise std::invalid_argument.
DepthMap normalize_depth(const DepthMap& patch);

// Sigmoid blend sigma(B * D_hat) of a base soft mask with normalized depth.
SoftMask blend(const SoftMask& base, const DepthMap& depth_norm);

// Refined RoI: the sigmoid blend plus the pre-sigmoid product grid it was
// derived from. The product is retained because binarization thresholds
// B * D_hat directly rather than its sigmoid.
struct RefinedRoi {
  Roi roi;           // placement in frame coordinates
  SoftMask values;   // sigma(B * D_hat) over the RoI
  SoftMask product;  // B * D_hat over the RoI
};

// Full refinement of one detection: crop base mask and depth to the box's
// RoI, subdivide k x k, normalize depth per tile, and blend per tile.
// Base values must lie in [0, 1].
RefinedRoi refine_mask(const SoftMask& base, const DepthMap& depth,
                       const BBox& box, const DgmParams& params);

// Thresholds the product grid at params.tau_prod; ties count as foreground.
BinaryMask binarize(const RefinedRoi& refined, const DgmParams& params);

// One binarized RoI queued for pasting into a frame canvas.
struct RoiPlacement {
  BinaryMask mask;  // RoI-shaped binary patch
  int x0 = 0;       // column of the patch's left edge in the frame
  int y0 = 0;       // row of the patch's top edge in the frame
  double score = 0.0;
  int id = 0;       // tie-break key; lower id wins equal scores
};

// Pastes RoI patches into a frame, resolving contested pixels by highest
// score and then lowest id. Returns one full-frame mask per placement,
// index-aligned with the input; the results are pairwise disjoint.
std::vector<BinaryMask> paste_roi(int frame_height, int frame_width,
                                  const std::vector<RoiPlacement>& rois);

}  // namespace mots

#endif  // MOTSKIT_REFINE_HPP_

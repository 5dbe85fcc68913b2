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

#include "motskit/refine.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace mots {

namespace {

void check_params(const DgmParams& params) {
  if (params.k < 1) {
    throw std::invalid_argument("refine: k must be >= 1");
  }
  if (!(params.tau_prod > 0.0) || !(params.tau_prod < 1.0)) {
    throw std::invalid_argument("refine: tau_prod must lie in (0, 1)");
  }
}

template <typename Plane>
Plane crop_plane(const Plane& image, const Roi& roi) {
  if (roi.x0 < 0 || roi.y0 < 0 || roi.x1 > image.width ||
      roi.y1 > image.height || roi.empty()) {
    throw std::invalid_argument("crop: RoI outside image or empty");
  }
  Plane out(roi.height(), roi.width());
  for (int r = 0; r < roi.height(); ++r) {
    for (int c = 0; c < roi.width(); ++c) {
      out.at(r, c) = image.at(roi.y0 + r, roi.x0 + c);
    }
  }
  return out;
}

}  // namespace

Roi clip_box_to_image(const BBox& box, int image_height, int image_width) {
  if (box.x2 < box.x1 || box.y2 < box.y1) {
    throw std::invalid_argument("clip_box_to_image: box extents inverted");
  }
  Roi roi;
  roi.x0 = std::max(0, static_cast<int>(std::floor(box.x1)));
  roi.y0 = std::max(0, static_cast<int>(std::floor(box.y1)));
  roi.x1 = std::min(image_width, static_cast<int>(std::ceil(box.x2)));
  roi.y1 = std::min(image_height, static_cast<int>(std::ceil(box.y2)));
  if (roi.empty()) {
    throw std::invalid_argument(
        "clip_box_to_image: box clips to an empty RoI");
  }
  return roi;
}

DepthMap crop(const DepthMap& image, const Roi& roi) {
  return crop_plane(image, roi);
}

SoftMask crop(const SoftMask& image, const Roi& roi) {
  return crop_plane(image, roi);
}

DepthPatch crop_roi(const DepthMap& image, const BBox& box) {
  const Roi roi = clip_box_to_image(box, image.height, image.width);
  return DepthPatch{roi, crop(image, roi)};
}

SoftPatch crop_roi(const SoftMask& image, const BBox& box) {
  const Roi roi = clip_box_to_image(box, image.height, image.width);
  return SoftPatch{roi, crop(image, roi)};
}

std::vector<Roi> subdivide(int height, int width, int k) {
  if (height < 1 || width < 1) {
    throw std::invalid_argument("subdivide: patch must be non-empty");
  }
  if (k < 1) {
    throw std::invalid_argument("subdivide: k must be >= 1");
  }
  const int base_h = height / k;
  const int base_w = width / k;
  std::vector<Roi> tiles;
  tiles.reserve(static_cast<std::size_t>(k) * k);
  for (int gr = 0; gr < k; ++gr) {
    const int y0 = gr * base_h;
    const int y1 = (gr == k - 1) ? height : (gr + 1) * base_h;
    for (int gc = 0; gc < k; ++gc) {
      const int x0 = gc * base_w;
      const int x1 = (gc == k - 1) ? width : (gc + 1) * base_w;
      tiles.push_back(Roi{x0, y0, x1, y1});
    }
  }
  return tiles;
}

DepthMap normalize_depth(const DepthMap& patch) {
  if (patch.values.empty()) {
    throw std::invalid_argument("normalize_depth: empty patch");
  }
  double lo = patch.values[0], hi = patch.values[0];
  for (double v : patch.values) {
    if (!std::isfinite(v)) {
      throw std::invalid_argument("normalize_depth: non-finite depth value");
    }
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  DepthMap out(patch.height, patch.width);
  if (hi == lo) {
    std::fill(out.values.begin(), out.values.end(), 1.0);
    return out;
  }
  const double range = hi - lo;
  for (std::size_t i = 0; i < patch.values.size(); ++i) {
    out.values[i] = (patch.values[i] - lo) / range;
  }
  return out;
}

SoftMask blend(const SoftMask& base, const DepthMap& depth_norm) {
  if (base.height != depth_norm.height || base.width != depth_norm.width) {
    throw std::invalid_argument("blend: shape mismatch");
  }
  SoftMask out(base.height, base.width);
  for (std::size_t i = 0; i < base.values.size(); ++i) {
    const double p = base.values[i] * depth_norm.values[i];
    out.values[i] = 1.0 / (1.0 + std::exp(-p));
  }
  return out;
}

RefinedRoi refine_mask(const SoftMask& base, const DepthMap& depth,
                       const BBox& box, const DgmParams& params) {
  check_params(params);
  if (base.height != depth.height || base.width != depth.width) {
    throw std::invalid_argument("refine_mask: base/depth shape mismatch");
  }
  for (double v : base.values) {
    if (!(v >= 0.0) || !(v <= 1.0)) {
      throw std::invalid_argument(
          "refine_mask: base mask values must lie in [0, 1]");
    }
  }
  const Roi roi = clip_box_to_image(box, base.height, base.width);
  const SoftMask base_roi = crop(base, roi);
  const DepthMap depth_roi = crop(depth, roi);

  RefinedRoi out;
  out.roi = roi;
  out.values = SoftMask(roi.height(), roi.width());
  out.product = SoftMask(roi.height(), roi.width());

  for (const Roi& tile : subdivide(roi.height(), roi.width(), params.k)) {
    if (tile.empty()) continue;
    const DepthMap depth_tile = crop(depth_roi, tile);
    const DepthMap norm_tile = normalize_depth(depth_tile);
    for (int r = 0; r < tile.height(); ++r) {
      for (int c = 0; c < tile.width(); ++c) {
        const double b = base_roi.at(tile.y0 + r, tile.x0 + c);
        const double p = b * norm_tile.at(r, c);
        out.product.at(tile.y0 + r, tile.x0 + c) = p;
        out.values.at(tile.y0 + r, tile.x0 + c) =
            1.0 / (1.0 + std::exp(-p));
      }
    }
  }
  return out;
}

BinaryMask binarize(const RefinedRoi& refined, const DgmParams& params) {
  check_params(params);
  BinaryMask mask(refined.product.height, refined.product.width);
  for (std::size_t i = 0; i < refined.product.values.size(); ++i) {
    mask.data[i] = refined.product.values[i] >= params.tau_prod ? 1 : 0;
  }
  return mask;
}

std::vector<BinaryMask> paste_roi(int frame_height, int frame_width,
                                   const std::vector<RoiPlacement>& rois) {
  if (frame_height < 1 || frame_width < 1) {
    throw std::invalid_argument("paste_roi: frame dimensions must be positive");
  }
  for (std::size_t i = 0; i < rois.size(); ++i) {
    const RoiPlacement& p = rois[i];
    if (p.x0 < 0 || p.y0 < 0 || p.x0 + p.mask.width > frame_width ||
        p.y0 + p.mask.height > frame_height) {
      throw std::invalid_argument("paste_roi: placement " +
                                  std::to_string(i) + " exceeds the frame");
    }
  }

  const std::size_t area =
      static_cast<std::size_t>(frame_height) * frame_width;
  std::vector<int> owner(area, -1);
  for (std::size_t i = 0; i < rois.size(); ++i) {
    const RoiPlacement& p = rois[i];
    for (int r = 0; r < p.mask.height; ++r) {
      for (int c = 0; c < p.mask.width; ++c) {
        if (!p.mask.at(r, c)) continue;
        const std::size_t pix =
            static_cast<std::size_t>(p.y0 + r) * frame_width + (p.x0 + c);
        const int cur = owner[pix];
        if (cur < 0) {
          owner[pix] = static_cast<int>(i);
          continue;
        }
        const RoiPlacement& q = rois[cur];
        if (p.score > q.score || (p.score == q.score && p.id < q.id)) {
          owner[pix] = static_cast<int>(i);
        }
      }
    }
  }

  std::vector<BinaryMask> out(rois.size(),
                              BinaryMask(frame_height, frame_width));
  for (std::size_t pix = 0; pix < area; ++pix) {
    if (owner[pix] >= 0) out[owner[pix]].data[pix] = 1;
  }
  return out;
}

}  // namespace mots

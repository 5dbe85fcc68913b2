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

#ifndef MOTSKIT_MASK_HPP_
#define MOTSKIT_MASK_HPP_

#include <cstdint>
#include <string>
#include <vector>

namespace mots {

// Dense binary mask, row-major storage, values restricted to {0, 1}.
struct BinaryMask {
  int height = 0;
  int width = 0;
  std::vector<std::uint8_t> data;

  BinaryMask() = default;
  BinaryMask(int h, int w)
      : height(h),
        width(w),
        data(static_cast<std::size_t>(h) * static_cast<std::size_t>(w), 0) {}

  std::uint8_t& at(int row, int col) {
    return data[static_cast<std::size_t>(row) * width + col];
  }
  std::uint8_t at(int row, int col) const {
    return data[static_cast<std::size_t>(row) * width + col];
  }

  bool operator==(const BinaryMask& other) const = default;
};

// Compressed run-length mask. `counts` holds the variable-length ASCII
// encoding of column-major runs; see rle_encode for the exact scheme.
struct RleMask {
  int height = 0;
  int width = 0;
  std::string counts;

  bool operator==(const RleMask& other) const = default;
};

// Axis-aligned box with half-open extent [x1, x2) x [y1, y2) in pixel units.
struct BBox {
  double x1 = 0.0;
  double y1 = 0.0;
  double x2 = 0.0;
  double y2 = 0.0;

  bool operator==(const BBox& other) const = default;
};

// Encodes a dense mask into the compressed run-length string format.
//
// Runs are taken in column-major pixel order and alternate values starting
// with background, so an all-background mask is the single run [h*w] and a
// mask whose first pixel is foreground starts with an explicit zero run.
// Every run count except the first two is stored as a delta against the
// count two positions back. Each (possibly negative) value is then emitted
// as a little-endian sequence of 5-bit chunks: bit 0x20 marks continuation,
// bit 0x10 of the final chunk carries the sign, and each chunk is mapped to
// ASCII by adding 48.
RleMask rle_encode(const BinaryMask& mask);

// Inverse of rle_encode. Throws FormatError when the string is truncated,
// contains characters outside the 48..111 alphabet, yields a negative run
// count, or when the runs do not sum to height * width.
BinaryMask rle_decode(const RleMask& rle);

// Decoded run counts (column-major, alternating starting with background).
// Exposed for run-level consumers; validates the same way as rle_decode
// except for the area check against stated dimensions.
std::vector<std::int64_t> rle_counts(const std::string& counts);

// Foreground pixel count without materialising the dense mask.
std::int64_t rle_area(const RleMask& rle);

// Intersection-over-union computed directly on the run-length encoding.
// Both masks must share dimensions (std::invalid_argument otherwise).
// Two empty masks have IoU 0.
double mask_iou(const RleMask& a, const RleMask& b);

// Dense-mask IoU with the same conventions as the RLE overload.
double mask_iou(const BinaryMask& a, const BinaryMask& b);

// Foreground intersection area straight from two run streams.
std::int64_t rle_intersection_area(const RleMask& a, const RleMask& b);

// Tight half-open bounding box around the mask foreground; an empty mask
// maps to the degenerate box (0, 0, 0, 0).
BBox mask_to_bbox(const BinaryMask& mask);
BBox mask_to_bbox(const RleMask& rle);

double box_area(const BBox& box);

// Plain IoU on boxes; returns 0 when the union has zero area.
double box_iou(const BBox& a, const BBox& b);

// Generalized IoU: IoU - (|C| - |U|) / |C| where C is the smallest
// enclosing box. Undefined (std::invalid_argument) when both boxes are
// degenerate, since C then has zero area.
double box_giou(const BBox& a, const BBox& b);

}  // namespace mots

#endif  // MOTSKIT_MASK_HPP_

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

#include "motskit/mask.hpp"

#include <algorithm>
#include <stdexcept>

#include "motskit/error.hpp"

namespace mots {

namespace {

void check_dims(int height, int width, const char* who) {
  if (height < 1 || width < 1) {
    throw std::invalid_argument(std::string(who) +
                                ": mask dimensions must be positive");
  }
}

std::string encode_counts(const std::vector<std::int64_t>& counts) {
  std::string out;
  out.reserve(counts.size() * 2);
  for (std::size_t i = 0; i < counts.size(); ++i) {
    std::int64_t x = counts[i];
    if (i > 2) x -= counts[i - 2];
    bool more = true;
    while (more) {
      int chunk = static_cast<int>(x & 0x1f);
      x >>= 5;  // arithmetic shift; C++20 guarantees sign propagation
      more = (chunk & 0x10) != 0 ? (x != -1) : (x != 0);
      if (more) chunk |= 0x20;
      out.push_back(static_cast<char>(chunk + 48));
    }
  }
  return out;
}

}  // namespace

std::vector<std::int64_t> rle_counts(const std::string& counts) {
  std::vector<std::int64_t> out;
  std::size_t pos = 0;
  while (pos < counts.size()) {
    std::int64_t x = 0;
    int shift = 0;
    bool more = true;
    int chunk = 0;
    while (more) {
      if (pos >= counts.size()) {
        throw FormatError("rle: truncated chunk sequence");
      }
      chunk = counts[pos] - 48;
      if (chunk < 0 || chunk > 63) {
        throw FormatError("rle: character out of encoding alphabet");
      }
      if (shift > 55) {
        throw FormatError("rle: run count does not fit in 64 bits");
      }
      x |= static_cast<std::int64_t>(chunk & 0x1f) << shift;
      more = (chunk & 0x20) != 0;
      shift += 5;
      ++pos;
    }
    if ((chunk & 0x10) != 0 && shift < 64) {
      x |= ~std::int64_t{0} << shift;  // sign-extend the final chunk
    }
    if (out.size() > 2) x += out[out.size() - 2];
    if (x < 0) throw FormatError("rle: negative run count after delta");
    out.push_back(x);
  }
  return out;
}

RleMask rle_encode(const BinaryMask& mask) {
  check_dims(mask.height, mask.width, "rle_encode");
  if (mask.data.size() != static_cast<std::size_t>(mask.height) * mask.width) {
    throw std::invalid_argument("rle_encode: data size does not match shape");
  }
  std::vector<std::int64_t> counts;
  std::uint8_t prev = 0;
  std::int64_t run = 0;
  for (int col = 0; col < mask.width; ++col) {
    for (int row = 0; row < mask.height; ++row) {
      std::uint8_t v = mask.at(row, col) ? 1 : 0;
      if (v != prev) {
        counts.push_back(run);
        run = 0;
        prev = v;
      }
      ++run;
    }
  }
  counts.push_back(run);
  return RleMask{mask.height, mask.width, encode_counts(counts)};
}

BinaryMask rle_decode(const RleMask& rle) {
  check_dims(rle.height, rle.width, "rle_decode");
  const std::vector<std::int64_t> counts = rle_counts(rle.counts);
  const std::int64_t area =
      static_cast<std::int64_t>(rle.height) * rle.width;
  std::int64_t total = 0;
  for (std::int64_t c : counts) total += c;
  if (total != area) {
    throw FormatError("rle: run counts sum to " + std::to_string(total) +
                      ", expected " + std::to_string(area));
  }
  BinaryMask mask(rle.height, rle.width);
  std::int64_t idx = 0;
  std::uint8_t value = 0;
  for (std::int64_t c : counts) {
    if (value) {
      for (std::int64_t n = 0; n < c; ++n, ++idx) {
        const int row = static_cast<int>(idx % rle.height);
        const int col = static_cast<int>(idx / rle.height);
        mask.at(row, col) = 1;
      }
    } else {
      idx += c;
    }
    value ^= 1;
  }
  return mask;
}

std::int64_t rle_area(const RleMask& rle) {
  const std::vector<std::int64_t> counts = rle_counts(rle.counts);
  std::int64_t area = 0;
  for (std::size_t i = 1; i < counts.size(); i += 2) area += counts[i];
  return area;
}

std::int64_t rle_intersection_area(const RleMask& a, const RleMask& b) {
  if (a.height != b.height || a.width != b.width) {
    throw std::invalid_argument("rle_intersection_area: dimension mismatch");
  }
  const std::vector<std::int64_t> ca = rle_counts(a.counts);
  const std::vector<std::int64_t> cb = rle_counts(b.counts);
  std::size_t ia = 0, ib = 0;
  std::int64_t ra = ia < ca.size() ? ca[ia] : 0;
  std::int64_t rb = ib < cb.size() ? cb[ib] : 0;
  bool va = false, vb = false;
  std::int64_t inter = 0;
  while (ia < ca.size() && ib < cb.size()) {
    const std::int64_t step = std::min(ra, rb);
    if (va && vb) inter += step;
    ra -= step;
    rb -= step;
    if (ra == 0) {
      ++ia;
      va = !va;
      if (ia < ca.size()) ra = ca[ia];
    }
    if (rb == 0) {
      ++ib;
      vb = !vb;
      if (ib < cb.size()) rb = cb[ib];
    }
  }
  return inter;
}

double mask_iou(const RleMask& a, const RleMask& b) {
  const std::int64_t inter = rle_intersection_area(a, b);
  const std::int64_t uni = rle_area(a) + rle_area(b) - inter;
  return uni == 0 ? 0.0 : static_cast<double>(inter) / static_cast<double>(uni);
}

double mask_iou(const BinaryMask& a, const BinaryMask& b) {
  if (a.height != b.height || a.width != b.width) {
    throw std::invalid_argument("mask_iou: dimension mismatch");
  }
  std::int64_t inter = 0, uni = 0;
  for (std::size_t i = 0; i < a.data.size(); ++i) {
    const bool fa = a.data[i] != 0;
    const bool fb = b.data[i] != 0;
    inter += fa && fb;
    uni += fa || fb;
  }
  return uni == 0 ? 0.0 : static_cast<double>(inter) / static_cast<double>(uni);
}

BBox mask_to_bbox(const BinaryMask& mask) {
  int rmin = mask.height, rmax = -1, cmin = mask.width, cmax = -1;
  for (int r = 0; r < mask.height; ++r) {
    for (int c = 0; c < mask.width; ++c) {
      if (!mask.at(r, c)) continue;
      rmin = std::min(rmin, r);
      rmax = std::max(rmax, r);
      cmin = std::min(cmin, c);
      cmax = std::max(cmax, c);
    }
  }
  if (rmax < 0) return BBox{0.0, 0.0, 0.0, 0.0};
  return BBox{static_cast<double>(cmin), static_cast<double>(rmin),
              static_cast<double>(cmax + 1), static_cast<double>(rmax + 1)};
}

BBox mask_to_bbox(const RleMask& rle) { return mask_to_bbox(rle_decode(rle)); }

namespace {

void check_box(const BBox& b, const char* who) {
  if (b.x2 < b.x1 || b.y2 < b.y1) {
    throw std::invalid_argument(std::string(who) + ": box extents inverted");
  }
}

}  // namespace

double box_area(const BBox& box) {
  check_box(box, "box_area");
  return (box.x2 - box.x1) * (box.y2 - box.y1);
}

double box_iou(const BBox& a, const BBox& b) {
  check_box(a, "box_iou");
  check_box(b, "box_iou");
  const double iw = std::min(a.x2, b.x2) - std::max(a.x1, b.x1);
  const double ih = std::min(a.y2, b.y2) - std::max(a.y1, b.y1);
  const double inter = std::max(iw, 0.0) * std::max(ih, 0.0);
  const double uni = box_area(a) + box_area(b) - inter;
  return uni <= 0.0 ? 0.0 : inter / uni;
}

double box_giou(const BBox& a, const BBox& b) {
  check_box(a, "box_giou");
  check_box(b, "box_giou");
  const double area_a = box_area(a);
  const double area_b = box_area(b);
  if (area_a == 0.0 && area_b == 0.0) {
    throw std::invalid_argument(
        "box_giou: undefined for two degenerate boxes");
  }
  const double iw = std::min(a.x2, b.x2) - std::max(a.x1, b.x1);
  const double ih = std::min(a.y2, b.y2) - std::max(a.y1, b.y1);
  const double inter = std::max(iw, 0.0) * std::max(ih, 0.0);
  const double uni = area_a + area_b - inter;
  const double hull = (std::max(a.x2, b.x2) - std::min(a.x1, b.x1)) *
                      (std::max(a.y2, b.y2) - std::min(a.y1, b.y1));
  const double iou = uni <= 0.0 ? 0.0 : inter / uni;
  return iou - (hull - uni) / hull;
}

}  // namespace mots

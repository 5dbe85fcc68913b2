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

#include "motskit/synth.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace mots {

namespace {

// splitmix64: tiny, portable, and bit-stable across platforms, which the
// determinism guarantee needs (std:: distributions are not reproducible).
struct Rng {
  std::uint64_t state;

  explicit Rng(std::uint64_t seed) : state(seed) {}

  std::uint64_t next_u64() {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // Uniform in [0, 1) with 53 random bits.
  double next_unit() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  // Uniform in [lo, hi).
  double next_in(double lo, double hi) {
    return lo + (hi - lo) * next_unit();
  }
};

struct SynthObject {
  bool ellipse = false;
  double cx = 0.0, cy = 0.0;  // position at frame 0
  double hw = 0.0, hh = 0.0;  // half extents
  double vx = 0.0, vy = 0.0;  // pixels per frame
  double layer = 0.0;         // depth layer, larger = nearer
  int class_id = 0;
  int track_id = 0;
};

void check_spec(const SynthSpec& spec) {
  if (spec.frames < 1 || spec.objects < 1 || spec.noise < 0 ||
      spec.embedding_dim < 1) {
    throw std::invalid_argument("synth: invalid spec counts");
  }
  if (spec.height < 8 || spec.width < 8) {
    throw std::invalid_argument("synth: image must be at least 8x8");
  }
  const int grid = static_cast<int>(
      std::ceil(std::sqrt(static_cast<double>(spec.objects))));
  const double cell_min =
      std::min(spec.width, spec.height) / static_cast<double>(grid);
  // Objects occupy at most 0.30 * cell (half extent) + 0.05 * cell jitter;
  // the remaining 0.15 * cell margin must absorb the noise dilation plus a
  // one-pixel guard band.
  if (cell_min * 0.15 < static_cast<double>(spec.noise) + 1.0) {
    throw std::invalid_argument(
        "synth: image too small for the object count and noise radius");
  }
}

bool covers(const SynthObject& obj, int frame, int row, int col) {
  const double px = static_cast<double>(col) + 0.5;
  const double py = static_cast<double>(row) + 0.5;
  const double dx = px - (obj.cx + obj.vx * frame);
  const double dy = py - (obj.cy + obj.vy * frame);
  if (obj.ellipse) {
    const double nx = dx / obj.hw;
    const double ny = dy / obj.hh;
    return nx * nx + ny * ny <= 1.0;
  }
  return std::abs(dx) <= obj.hw && std::abs(dy) <= obj.hh;
}

BinaryMask rasterize(const SynthObject& obj, int frame, int height,
                     int width) {
  // Only scan the object's bounding rows/cols; silhouettes are tiny
  // relative to the frame.
  const double cx = obj.cx + obj.vx * frame;
  const double cy = obj.cy + obj.vy * frame;
  const int r0 = std::max(0, static_cast<int>(std::floor(cy - obj.hh - 1)));
  const int r1 =
      std::min(height, static_cast<int>(std::ceil(cy + obj.hh + 1)));
  const int c0 = std::max(0, static_cast<int>(std::floor(cx - obj.hw - 1)));
  const int c1 = std::min(width, static_cast<int>(std::ceil(cx + obj.hw + 1)));
  BinaryMask mask(height, width);
  for (int r = r0; r < r1; ++r) {
    for (int c = c0; c < c1; ++c) {
      if (covers(obj, frame, r, c)) mask.at(r, c) = 1;
    }
  }
  return mask;
}

BinaryMask dilate(const BinaryMask& mask, int radius) {
  if (radius == 0) return mask;
  BinaryMask out(mask.height, mask.width);
  for (int r = 0; r < mask.height; ++r) {
    for (int c = 0; c < mask.width; ++c) {
      if (!mask.at(r, c)) continue;
      const int r0 = std::max(0, r - radius);
      const int r1 = std::min(mask.height - 1, r + radius);
      const int c0 = std::max(0, c - radius);
      const int c1 = std::min(mask.width - 1, c + radius);
      for (int rr = r0; rr <= r1; ++rr) {
        for (int cc = c0; cc <= c1; ++cc) out.at(rr, cc) = 1;
      }
    }
  }
  return out;
}

}  // namespace

SynthScene synthesize(const SynthSpec& spec) {
  check_spec(spec);
  Rng rng(spec.seed);

  const int grid = static_cast<int>(
      std::ceil(std::sqrt(static_cast<double>(spec.objects))));
  const double cell_w = static_cast<double>(spec.width) / grid;
  const double cell_h = static_cast<double>(spec.height) / grid;

  // Object parameters consume the RNG stream in a fixed order.
  std::vector<SynthObject> objects;
  objects.reserve(spec.objects);
  for (int i = 0; i < spec.objects; ++i) {
    SynthObject obj;
    const int row = i / grid;
    const int col = i % grid;
    obj.hw = rng.next_in(0.18, 0.30) * cell_w;
    obj.hh = rng.next_in(0.18, 0.30) * cell_h;
    const double jx = rng.next_in(-0.05, 0.05) * cell_w;
    const double jy = rng.next_in(-0.05, 0.05) * cell_h;
    obj.ellipse = rng.next_unit() < 0.5;
    double vx = rng.next_in(-1.0, 1.0);
    double vy = rng.next_in(-1.0, 1.0);
    obj.cx = (col + 0.5) * cell_w + jx;
    obj.cy = (row + 0.5) * cell_h + jy;

    // Clamp speed so silhouette + jitter + noise dilation + 1px guard
    // stay inside the object's grid cell for the whole clip.
    const double guard = static_cast<double>(spec.noise) + 1.0;
    const double allow_x = cell_w / 2.0 - obj.hw - std::abs(jx) - guard;
    const double allow_y = cell_h / 2.0 - obj.hh - std::abs(jy) - guard;
    if (spec.frames > 1) {
      const double span = static_cast<double>(spec.frames - 1);
      if (std::abs(vx) * span > allow_x) {
        vx *= allow_x / (std::abs(vx) * span);
      }
      if (std::abs(vy) * span > allow_y) {
        vy *= allow_y / (std::abs(vy) * span);
      }
    }
    obj.vx = vx;
    obj.vy = vy;
    obj.layer = 1.0 + static_cast<double>(i + 1) / spec.objects;
    obj.class_id = (i % 2) + 1;
    obj.track_id = i + 1;
    objects.push_back(obj);
  }

  SynthScene scene;
  scene.gt.sequence_id = "synth-" + std::to_string(spec.seed);
  scene.gt.frame_count = spec.frames;
  scene.gt.image_height = spec.height;
  scene.gt.image_width = spec.width;
  scene.depth.reserve(spec.frames);
  scene.flow.reserve(spec.frames);
  scene.detections.resize(spec.frames);
  scene.det_track_ids.resize(spec.frames);

  for (int t = 0; t < spec.frames; ++t) {
    DepthMap depth(spec.height, spec.width);
    FlowField flow(spec.height, spec.width);
    std::vector<AnnEntry>& entries = scene.gt.frames[t];
    std::vector<BinaryMask> true_masks;
    true_masks.reserve(objects.size());
    for (const SynthObject& obj : objects) {
      BinaryMask mask = rasterize(obj, t, spec.height, spec.width);
      for (int r = 0; r < spec.height; ++r) {
        for (int c = 0; c < spec.width; ++c) {
          if (!mask.at(r, c)) continue;
          depth.at(r, c) = obj.layer;
          flow.dx[flow.index(r, c)] = obj.vx;
          flow.dy[flow.index(r, c)] = obj.vy;
        }
      }
      AnnEntry entry;
      entry.track_id = obj.track_id;
      entry.class_id = obj.class_id;
      entry.mask = rle_encode(mask);
      entries.push_back(std::move(entry));
      true_masks.push_back(std::move(mask));
    }

    // Coarse detections: dilated masks, noisy embeddings, seeded scores.
    for (std::size_t i = 0; i < objects.size(); ++i) {
      const SynthObject& obj = objects[i];
      Detection det;
      det.frame = t;
      det.class_id = obj.class_id;
      det.score = rng.next_in(0.5, 1.0);
      const BinaryMask coarse = dilate(true_masks[i], spec.noise);
      det.mask = rle_encode(coarse);
      det.bbox = mask_to_bbox(coarse);
      det.embedding.assign(spec.embedding_dim, 0.0);
      const int axis = static_cast<int>(i) % spec.embedding_dim;
      det.embedding[axis] =
          1.0 + static_cast<double>(static_cast<int>(i) / spec.embedding_dim);
      for (int e = 0; e < spec.embedding_dim; ++e) {
        det.embedding[e] += rng.next_in(-0.05, 0.05);
      }
      scene.detections[t].push_back(std::move(det));
      scene.det_track_ids[t].push_back(obj.track_id);
    }

    scene.depth.push_back(std::move(depth));
    scene.flow.push_back(std::move(flow));
  }
  return scene;
}

}  // namespace mots

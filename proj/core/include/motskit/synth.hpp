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

#ifndef MOTSKIT_SYNTH_HPP_
#define MOTSKIT_SYNTH_HPP_

#include <cstdint>
#include <vector>

#include "motskit/dataset.hpp"
#include "motskit/refine.hpp"
#include "motskit/temporal.hpp"
#include "motskit/tracking.hpp"

namespace mots {

// Deterministic synthetic-scene recipe. Objects are axis-aligned
// rectangles and ellipses with constant velocities, one per cell of a
// ceil(sqrt(objects))-square grid; sizes, jitter, and speeds are bounded
// so that true silhouettes (and their noise-dilated coarse masks) never
// leave their cell or touch another object.
struct SynthSpec {
  std::uint64_t seed = 1;
  int frames = 5;
  int objects = 3;
  int height = 96;
  int width = 96;
  int noise = 0;          // dilation radius applied to coarse masks
  int embedding_dim = 8;
};

// Everything a SynthSpec generates, with exact ground truth. Detections are
// the degraded "coarse" stream fed to the pipeline; det_track_ids aligns
// each detection with the ground-truth track it was derived from.
struct SynthScene {
  SequenceAnnotation gt;
  std::vector<DepthMap> depth;            // per frame; background 0,
                                          // object pixels carry the layer
  std::vector<FlowField> flow;            // per-pixel object velocity
  std::vector<std::vector<Detection>> detections;
  std::vector<std::vector<int>> det_track_ids;
};

// Deterministic for a given spec: the same seed yields bit-identical
// output on every platform (the internal RNG is fixed, not std::).
SynthScene synthesize(const SynthSpec& spec);

}  // namespace mots

#endif  // MOTSKIT_SYNTH_HPP_

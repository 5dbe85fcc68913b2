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

#ifndef MOTSKIT_TRACKING_HPP_
#define MOTSKIT_TRACKING_HPP_

#include <string>
#include <vector>

#include "motskit/dataset.hpp"
#include "motskit/mask.hpp"
#include "motskit/refine.hpp"

namespace mots {

struct Detection {
  int frame = 0;
  BBox bbox;
  int class_id = 0;
  double score = 0.0;  // confidence in [0, 1]
  RleMask mask;
  std::vector<double> embedding;
};

struct Track {
  int track_id = 0;  // positive, unique within the sequence
  int class_id = 0;
  std::vector<Detection> detections;  // strictly increasing frames
};

struct AssocParams {
  double dist_threshold = 1.0;  // max embedding L2 distance (inclusive)
  int max_gap = 1;              // max frame gap when extending a track
  bool same_class_only = true;
};

// Greedy embedding association. Per frame, candidate (track, detection)
// pairs — same class (unless disabled), gap <= max_gap, embedding
// distance <= dist_threshold against the track's latest detection — are
// matched in ascending (distance, track_id, detection index) order, each
// side used at most once. Leftover detections open new tracks, ids
// assigned sequentially from 1 in (frame, score descending, detection
// index) order. Embedding lengths must agree across the whole stream.
std::vector<Track> associate(const std::vector<std::vector<Detection>>& frames,
                             const AssocParams& params);

// Tight box recomputed from the decoded mask; falls back to det.bbox for
// an empty mask.
BBox mask_guided_box(const Detection& det);

// Full labeler pass: per frame, each detection's soft mask (its decoded
// RLE) is depth-refined inside its bbox, binarized, and pasted with the
// score contest; refined detections (empty masks dropped) get mask-guided
// boxes and flow through associate. Frames may be refined in parallel.
SequenceAnnotation run_labeler_pipeline(
    const std::vector<std::vector<Detection>>& detections,
    const std::vector<DepthMap>& depth, const DgmParams& dgm,
    const AssocParams& assoc, int jobs = 1,
    const std::string& sequence_id = "sequence");

}  // namespace mots

#endif  // MOTSKIT_TRACKING_HPP_

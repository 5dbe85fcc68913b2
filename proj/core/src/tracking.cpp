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

#include "motskit/tracking.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

#include "motskit/error.hpp"
#include "motskit/parallel.hpp"

namespace mots {

namespace {

void check_assoc_params(const AssocParams& params) {
  if (!(params.dist_threshold > 0.0)) {
    throw std::invalid_argument("associate: dist_threshold must be > 0");
  }
  if (params.max_gap < 1) {
    throw std::invalid_argument("associate: max_gap must be >= 1");
  }
}

void check_detection(const Detection& det, int frame,
                     std::size_t embedding_len, bool have_len) {
  if (det.frame != frame) {
    throw InvariantError("detection at frame slot " + std::to_string(frame) +
                         " carries frame index " + std::to_string(det.frame));
  }
  if (!(det.score >= 0.0) || !(det.score <= 1.0)) {
    throw InvariantError("detection score " + std::to_string(det.score) +
                         " outside [0, 1]");
  }
  if (have_len && det.embedding.size() != embedding_len) {
    throw InvariantError(
        "inconsistent embedding length: expected " +
        std::to_string(embedding_len) + ", got " +
        std::to_string(det.embedding.size()));
  }
}

double embedding_distance(const std::vector<double>& a,
                          const std::vector<double>& b) {
  double sq = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    sq += d * d;
  }
  return std::sqrt(sq);
}

}  // namespace

std::vector<Track> associate(const std::vector<std::vector<Detection>>& frames,
                             const AssocParams& params) {
  check_assoc_params(params);

  std::size_t embedding_len = 0;
  bool have_len = false;
  for (std::size_t f = 0; f < frames.size(); ++f) {
    for (const Detection& det : frames[f]) {
      check_detection(det, static_cast<int>(f), embedding_len, have_len);
      if (!have_len) {
        embedding_len = det.embedding.size();
        have_len = true;
      }
    }
  }

  struct ActiveTrack {
    int last_frame = 0;
    std::size_t track_index = 0;  // into the output list
  };

  std::vector<Track> tracks;
  std::vector<ActiveTrack> active;
  int next_id = 1;

  for (std::size_t f = 0; f < frames.size(); ++f) {
    const std::vector<Detection>& dets = frames[f];

    struct Candidate {
      double distance;
      int track_id;
      std::size_t det_index;
      std::size_t active_index;
    };
    std::vector<Candidate> candidates;
    for (std::size_t a = 0; a < active.size(); ++a) {
      const Track& track = tracks[active[a].track_index];
      const int gap = static_cast<int>(f) - active[a].last_frame;
      if (gap > params.max_gap) continue;
      const Detection& last = track.detections.back();
      for (std::size_t d = 0; d < dets.size(); ++d) {
        if (params.same_class_only && dets[d].class_id != track.class_id) {
          continue;
        }
        const double dist =
            embedding_distance(last.embedding, dets[d].embedding);
        if (dist <= params.dist_threshold) {
          candidates.push_back(Candidate{dist, track.track_id, d, a});
        }
      }
    }
    std::sort(candidates.begin(), candidates.end(),
              [](const Candidate& x, const Candidate& y) {
                if (x.distance != y.distance) return x.distance < y.distance;
                if (x.track_id != y.track_id) return x.track_id < y.track_id;
                return x.det_index < y.det_index;
              });

    std::vector<char> det_used(dets.size(), 0);
    std::vector<char> track_used(active.size(), 0);
    for (const Candidate& c : candidates) {
      if (det_used[c.det_index] || track_used[c.active_index]) continue;
      det_used[c.det_index] = 1;
      track_used[c.active_index] = 1;
      Track& track = tracks[active[c.active_index].track_index];
      track.detections.push_back(dets[c.det_index]);
      active[c.active_index].last_frame = static_cast<int>(f);
    }

    // Fresh tracks for leftovers, ids in score-descending order.
    std::vector<std::size_t> fresh;
    for (std::size_t d = 0; d < dets.size(); ++d) {
      if (!det_used[d]) fresh.push_back(d);
    }
    std::stable_sort(fresh.begin(), fresh.end(),
                     [&dets](std::size_t x, std::size_t y) {
                       return dets[x].score > dets[y].score;
                     });
    for (std::size_t d : fresh) {
      Track track;
      track.track_id = next_id++;
      track.class_id = dets[d].class_id;
      track.detections.push_back(dets[d]);
      tracks.push_back(std::move(track));
      active.push_back(ActiveTrack{static_cast<int>(f), tracks.size() - 1});
    }
  }
  return tracks;
}

BBox mask_guided_box(const Detection& det) {
  const BBox box = mask_to_bbox(det.mask);
  if (box == BBox{0.0, 0.0, 0.0, 0.0}) return det.bbox;
  return box;
}

SequenceAnnotation run_labeler_pipeline(
    const std::vector<std::vector<Detection>>& detections,
    const std::vector<DepthMap>& depth, const DgmParams& dgm,
    const AssocParams& assoc, int jobs, const std::string& sequence_id) {
  if (detections.size() != depth.size()) {
    throw InvariantError("pipeline: " + std::to_string(detections.size()) +
                         " detection frames vs " +
                         std::to_string(depth.size()) + " depth maps");
  }
  if (jobs < 1) {
    throw std::invalid_argument("pipeline: jobs must be >= 1");
  }
  int height = 0, width = 0;
  for (const DepthMap& d : depth) {
    if (height == 0) {
      height = d.height;
      width = d.width;
    } else if (d.height != height || d.width != width) {
      throw InvariantError("pipeline: depth maps disagree on dimensions");
    }
  }

  std::vector<std::vector<Detection>> refined(detections.size());
  parallel_for(jobs, detections.size(), [&](std::size_t f) {
    const std::vector<Detection>& dets = detections[f];
    std::vector<RoiPlacement> placements;
    placements.reserve(dets.size());
    for (std::size_t d = 0; d < dets.size(); ++d) {
      const Detection& det = dets[d];
      if (det.mask.height != height || det.mask.width != width) {
        throw InvariantError("pipeline: mask dimensions differ from depth");
      }
      const BinaryMask dense = rle_decode(det.mask);
      SoftMask base(height, width);
      for (std::size_t i = 0; i < dense.data.size(); ++i) {
        base.values[i] = dense.data[i] ? 1.0 : 0.0;
      }
      const RefinedRoi rr = refine_mask(base, depth[f], det.bbox, dgm);
      RoiPlacement p;
      p.mask = binarize(rr, dgm);
      p.x0 = rr.roi.x0;
      p.y0 = rr.roi.y0;
      p.score = det.score;
      p.id = static_cast<int>(d);
      placements.push_back(std::move(p));
    }
    const std::vector<BinaryMask> pasted = paste_roi(height, width, placements);
    for (std::size_t d = 0; d < dets.size(); ++d) {
      Detection out = dets[d];
      out.mask = rle_encode(pasted[d]);
      if (rle_area(out.mask) == 0) continue;  // fully contested or carved away
      out.bbox = mask_guided_box(out);
      refined[f].push_back(std::move(out));
    }
  });

  const std::vector<Track> tracks = associate(refined, assoc);

  SequenceAnnotation ann;
  ann.sequence_id = sequence_id;
  ann.frame_count = static_cast<int>(detections.size());
  ann.image_height = height;
  ann.image_width = width;
  for (const Track& track : tracks) {
    for (const Detection& det : track.detections) {
      AnnEntry entry;
      entry.track_id = track.track_id;
      entry.class_id = track.class_id;
      entry.mask = det.mask;
      ann.frames[det.frame].push_back(entry);
    }
  }
  for (auto& [frame, entries] : ann.frames) {
    std::sort(entries.begin(), entries.end(),
              [](const AnnEntry& a, const AnnEntry& b) {
                return a.track_id < b.track_id;
              });
  }
  validate_annotation(ann);
  return ann;
}

}  // namespace mots

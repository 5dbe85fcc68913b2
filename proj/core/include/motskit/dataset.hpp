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

#ifndef MOTSKIT_DATASET_HPP_
#define MOTSKIT_DATASET_HPP_

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "motskit/mask.hpp"

namespace mots {

inline constexpr int kClassCar = 1;
inline constexpr int kClassPedestrian = 2;
inline constexpr int kIgnoreObjectId = 10000;
inline constexpr int kIgnoreClassId = 10;

// One annotated instance in one frame.
struct AnnEntry {
  int track_id = 0;
  int class_id = 0;
  RleMask mask;

  bool operator==(const AnnEntry& other) const = default;
};

// Per-sequence annotation: frame -> instances, plus ignore regions kept
// outside the instance bookkeeping. Invariants (checked by
// validate_annotation): per frame, instance masks are pairwise
// non-overlapping and track ids unique; class_id is car or pedestrian.
struct SequenceAnnotation {
  std::string sequence_id;
  int frame_count = 0;
  int image_height = 0;
  int image_width = 0;
  std::map<int, std::vector<AnnEntry>> frames;
  std::map<int, std::vector<RleMask>> ignore_regions;

  bool operator==(const SequenceAnnotation& other) const = default;
};

// Parses the per-line text format
//   frame obj_id class_id img_height img_width rle_counts
// where obj_id = class_id * 1000 + track_id and obj_id 10000 marks an
// ignore region (class_id 10). Throws FormatError with a line number for
// malformed lines and InvariantError for duplicate ids or overlapping
// masks. Blank lines are skipped.
SequenceAnnotation parse_mots_txt(const std::vector<std::string>& lines,
                                  const std::string& sequence_id = "");

// Inverse of parse_mots_txt; lines sorted by (frame, obj_id). Track ids
// must fit the obj_id encoding (0..999).
std::vector<std::string> write_mots_txt(const SequenceAnnotation& ann);

// Re-checks the SequenceAnnotation invariants; throws InvariantError
// naming the offending frame and ids, or FormatError for undecodable
// masks.
void validate_annotation(const SequenceAnnotation& ann);

// Keeps frames with index % n == 0 and reindexes them densely (original
// frame f becomes f / n). Track ids are preserved.
SequenceAnnotation subsample_every_n(const SequenceAnnotation& ann, int n);

// Uniform-bin histogram over the observed value range; the last bin is
// closed on the right. A degenerate range [v, v] widens to [v, v + 1].
struct Histogram {
  std::vector<double> edges;          // bin count + 1 monotone edges
  std::vector<std::int64_t> counts;   // one count per bin
};

struct StatsReport {
  std::int64_t video_clips = 0;
  std::int64_t total_frames = 0;
  std::int64_t identities = 0;   // distinct (sequence, track_id)
  std::int64_t instances = 0;    // instance masks over all frames
  double instances_per_frame = 0.0;
  Histogram size_histogram;          // sqrt(w * h) of mask-guided boxes
  Histogram track_length_histogram;  // frame spans incl. gaps per identity
};

// Aggregates annotation statistics over a non-empty list of sequences.
// Ignore regions contribute to none of the counts or histograms.
StatsReport dataset_stats(const std::vector<SequenceAnnotation>& anns,
                          int bins = 16);

// "car" / "pedestrian" for the two annotated classes.
std::string class_name(int class_id);

// Inverse of class_name; throws std::invalid_argument on unknown names.
int class_id_from_name(const std::string& name);

// 8000 -> "8K", 38240 -> "38K", 749 -> "749".
std::string format_count(std::int64_t n);

// Renders the report as a two-line pipe-separated table:
// clips, frames, identities, instances, instances per frame (2 decimals).
std::string format_stats_table(const StatsReport& report);

}  // namespace mots

#endif  // MOTSKIT_DATASET_HPP_

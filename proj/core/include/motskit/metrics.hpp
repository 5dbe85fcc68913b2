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

#ifndef MOTSKIT_METRICS_HPP_
#define MOTSKIT_METRICS_HPP_

#include <cmath>
#include <cstdint>
#include <map>
#include <utility>
#include <vector>

#include "motskit/dataset.hpp"

namespace mots {

// CLEAR-style per-frame matching. Under the non-overlap invariant a mask
// IoU > 0.5 pairing is necessarily one-to-one, so no optimization is
// involved.
struct MatchPair {
  int gt_id = 0;
  int pred_id = 0;
  double iou = 0.0;
};

struct FrameMatching {
  int frame = 0;
  std::vector<MatchPair> pairs;
  std::vector<int> unmatched_gt;
  std::vector<int> unmatched_pred;
};

// Matches one frame's ground-truth and predicted instances by strict
// IoU > 0.5. Both sides are validated to be internally non-overlapping
// (InvariantError naming the frame and ids otherwise).
FrameMatching match_frame(int frame, const std::vector<AnnEntry>& gt,
                          const std::vector<AnnEntry>& pred);

// Detection/association tallies at one localization threshold alpha.
struct HotaAlpha {
  double alpha = 0.0;
  std::int64_t tp = 0;
  std::int64_t fn = 0;
  std::int64_t fp = 0;
  double ass_sum = 0.0;  // sum over TPs of TPA / (gtT + predT - TPA)

  double det_a() const {
    const std::int64_t den = tp + fn + fp;
    return den == 0 ? 0.0 : static_cast<double>(tp) / den;
  }
  double ass_a() const {
    return tp == 0 ? 0.0 : ass_sum / static_cast<double>(tp);
  }
  double hota() const { return std::sqrt(det_a() * ass_a()); }
};

inline constexpr int kHotaAlphaCount = 19;  // alpha = 0.05, 0.10, ..., 0.95

struct HotaResult {
  double hota = 0.0;  // mean of per-alpha HOTA values
  std::vector<HotaAlpha> alphas;
};

// Per-class metric block. Ratio fields are NaN when num_gt == 0 (the
// not-applicable convention; reports serialize them as null).
struct ClassMetrics {
  std::int64_t tp = 0;
  std::int64_t fp = 0;
  std::int64_t fn = 0;
  std::int64_t ids = 0;
  std::int64_t num_gt = 0;
  double soft_tp = 0.0;
  double smotsa = 0.0;
  double motsa = 0.0;
  double hota = 0.0;
  HotaResult hota_detail;
};

struct MetricsReport {
  std::map<int, ClassMetrics> per_class;  // keyed by class_id
  ClassMetrics aggregate;
};

// CLEAR portion of the metrics for one class over one sequence pair:
// tp/fp/fn/soft_tp from per-frame matchings, id switches counted at
// matched pairs whose gt track's most recent previously matched pred id
// differs (gaps do not reset the history), and
//   motsa  = (tp - fp - ids) / num_gt
//   smotsa = (soft_tp - fp - ids) / num_gt.
// The hota fields are left unset; see compute_hota.
ClassMetrics compute_mots_metrics(const SequenceAnnotation& gt,
                                  const SequenceAnnotation& pred,
                                  int class_id);

// HOTA over the 19-point alpha grid {0.05, ..., 0.95}. Per alpha, frames
// are matched by Hungarian assignment maximizing first the number of
// pairs with IoU >= alpha and then the total global-alignment score;
// DetA = TP/(TP+FN+FP), AssA averages TPA/(gtT+predT-TPA) over TPs, and
// HOTA_alpha = sqrt(DetA * AssA). The returned scalar is the mean over
// alphas.
HotaResult compute_hota(const SequenceAnnotation& gt,
                        const SequenceAnnotation& pred, int class_id);

// Full report over one gt/pred pair for the requested classes (car and/or
// pedestrian). The aggregate section pools counts — and per-alpha HOTA
// tallies — across classes before recomputing the ratios.
MetricsReport evaluate(const SequenceAnnotation& gt,
                       const SequenceAnnotation& pred,
                       const std::vector<int>& classes);

// Multi-sequence evaluation: per-sequence tallies are computed
// independently (in parallel when jobs > 1) and merged by summation,
// which for HOTA means pooling the per-alpha counts.
MetricsReport evaluate_sequences(
    const std::vector<std::pair<const SequenceAnnotation*,
                                const SequenceAnnotation*>>& pairs,
    const std::vector<int>& classes, int jobs = 1);

// Applies the paste_roi contest rule to overlapping prediction masks
// (annotations carry no scores, so the lower track id wins every
// contested pixel). Entries whose masks end up empty are kept: they fail
// to match and count as false positives, mirroring the original
// submission size.
SequenceAnnotation resolve_overlaps(const SequenceAnnotation& ann);

}  // namespace mots

#endif  // MOTSKIT_METRICS_HPP_

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

#include "motskit/metrics.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>
#include <string>
#include <unordered_map>

#include "motskit/error.hpp"
#include "motskit/hungarian.hpp"
#include "motskit/parallel.hpp"
#include "motskit/refine.hpp"

namespace mots {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

void check_class(int class_id) {
  if (class_id != kClassCar && class_id != kClassPedestrian) {
    throw std::invalid_argument("metrics: unknown class_id " +
                                std::to_string(class_id));
  }
}

void check_compatible(const SequenceAnnotation& gt,
                      const SequenceAnnotation& pred) {
  if (gt.frame_count != pred.frame_count) {
    throw InvariantError(
        "metrics: frame-range mismatch between gt (" +
        std::to_string(gt.frame_count) + " frames) and pred (" +
        std::to_string(pred.frame_count) + " frames)");
  }
  const bool gt_has = !gt.frames.empty();
  const bool pred_has = !pred.frames.empty();
  if (gt_has && pred_has &&
      (gt.image_height != pred.image_height ||
       gt.image_width != pred.image_width)) {
    throw InvariantError("metrics: gt/pred image dimensions differ");
  }
}

std::vector<AnnEntry> entries_of_class(const SequenceAnnotation& ann,
                                       int frame, int class_id) {
  std::vector<AnnEntry> out;
  const auto it = ann.frames.find(frame);
  if (it == ann.frames.end()) return out;
  for (const AnnEntry& e : it->second) {
    if (e.class_id == class_id) out.push_back(e);
  }
  return out;
}

void check_no_overlap(int frame, const std::vector<AnnEntry>& entries,
                      const char* side) {
  for (std::size_t i = 0; i < entries.size(); ++i) {
    for (std::size_t j = i + 1; j < entries.size(); ++j) {
      if (rle_intersection_area(entries[i].mask, entries[j].mask) > 0) {
        throw InvariantError("frame " + std::to_string(frame) + ": " + side +
                             " masks of tracks " +
                             std::to_string(entries[i].track_id) + " and " +
                             std::to_string(entries[j].track_id) +
                             " overlap");
      }
    }
  }
}

}  // namespace

FrameMatching match_frame(int frame, const std::vector<AnnEntry>& gt,
                          const std::vector<AnnEntry>& pred) {
  check_no_overlap(frame, gt, "gt");
  check_no_overlap(frame, pred, "pred");
  FrameMatching out;
  out.frame = frame;
  std::vector<char> pred_used(pred.size(), 0);
  for (const AnnEntry& g : gt) {
    bool matched = false;
    for (std::size_t j = 0; j < pred.size(); ++j) {
      if (pred_used[j]) continue;
      const double iou = mask_iou(g.mask, pred[j].mask);
      if (iou > 0.5) {
        // Disjointness on both sides makes a second >0.5 partner
        // impossible, so the first hit is the unique one.
        out.pairs.push_back(MatchPair{g.track_id, pred[j].track_id, iou});
        pred_used[j] = 1;
        matched = true;
        break;
      }
    }
    if (!matched) out.unmatched_gt.push_back(g.track_id);
  }
  for (std::size_t j = 0; j < pred.size(); ++j) {
    if (!pred_used[j]) out.unmatched_pred.push_back(pred[j].track_id);
  }
  return out;
}

ClassMetrics compute_mots_metrics(const SequenceAnnotation& gt,
                                  const SequenceAnnotation& pred,
                                  int class_id) {
  check_class(class_id);
  check_compatible(gt, pred);
  ClassMetrics m;
  std::unordered_map<int, int> last_matched_pred;  // gt track -> pred id
  for (int frame = 0; frame < gt.frame_count; ++frame) {
    const std::vector<AnnEntry> g = entries_of_class(gt, frame, class_id);
    const std::vector<AnnEntry> p = entries_of_class(pred, frame, class_id);
    m.num_gt += static_cast<std::int64_t>(g.size());
    const FrameMatching fm = match_frame(frame, g, p);
    m.tp += static_cast<std::int64_t>(fm.pairs.size());
    m.fp += static_cast<std::int64_t>(fm.unmatched_pred.size());
    m.fn += static_cast<std::int64_t>(fm.unmatched_gt.size());
    for (const MatchPair& pair : fm.pairs) {
      m.soft_tp += pair.iou;
      const auto it = last_matched_pred.find(pair.gt_id);
      if (it != last_matched_pred.end() && it->second != pair.pred_id) {
        ++m.ids;
      }
      last_matched_pred[pair.gt_id] = pair.pred_id;
    }
  }
  if (m.num_gt == 0) {
    m.motsa = kNaN;
    m.smotsa = kNaN;
  } else {
    m.motsa = static_cast<double>(m.tp - m.fp - m.ids) /
              static_cast<double>(m.num_gt);
    m.smotsa = (m.soft_tp - static_cast<double>(m.fp + m.ids)) /
               static_cast<double>(m.num_gt);
  }
  m.hota = kNaN;  // filled by compute_hota / evaluate
  return m;
}

namespace {

// Frame-level view used by the HOTA passes: dense track indices plus the
// alpha-independent IoU table for every co-visible (gt, pred) pair.
struct HotaFrame {
  std::vector<int> gt_tracks;    // dense gt track indices present
  std::vector<int> pred_tracks;  // dense pred track indices present
  std::vector<double> iou;       // gt-major, size |gt| * |pred|
};

struct HotaProblem {
  std::int64_t total_gt = 0;
  std::int64_t total_pred = 0;
  std::vector<std::int64_t> gt_count;    // frames per gt track
  std::vector<std::int64_t> pred_count;  // frames per pred track
  std::vector<HotaFrame> frames;
};

HotaProblem build_hota_problem(const SequenceAnnotation& gt,
                               const SequenceAnnotation& pred,
                               int class_id) {
  HotaProblem prob;
  std::unordered_map<int, int> gt_index, pred_index;
  for (int frame = 0; frame < gt.frame_count; ++frame) {
    const std::vector<AnnEntry> g = entries_of_class(gt, frame, class_id);
    const std::vector<AnnEntry> p = entries_of_class(pred, frame, class_id);
    check_no_overlap(frame, g, "gt");
    check_no_overlap(frame, p, "pred");
    HotaFrame hf;
    for (const AnnEntry& e : g) {
      const auto [it, inserted] =
          gt_index.emplace(e.track_id, static_cast<int>(gt_index.size()));
      if (inserted) prob.gt_count.push_back(0);
      ++prob.gt_count[it->second];
      hf.gt_tracks.push_back(it->second);
    }
    for (const AnnEntry& e : p) {
      const auto [it, inserted] =
          pred_index.emplace(e.track_id, static_cast<int>(pred_index.size()));
      if (inserted) prob.pred_count.push_back(0);
      ++prob.pred_count[it->second];
      hf.pred_tracks.push_back(it->second);
    }
    hf.iou.resize(g.size() * p.size());
    for (std::size_t i = 0; i < g.size(); ++i) {
      for (std::size_t j = 0; j < p.size(); ++j) {
        hf.iou[i * p.size() + j] = mask_iou(g[i].mask, p[j].mask);
      }
    }
    prob.total_gt += static_cast<std::int64_t>(g.size());
    prob.total_pred += static_cast<std::int64_t>(p.size());
    prob.frames.push_back(std::move(hf));
  }
  return prob;
}

HotaAlpha solve_hota_alpha(const HotaProblem& prob, double alpha) {
  const std::size_t n_gt = prob.gt_count.size();
  const std::size_t n_pred = prob.pred_count.size();

  // Pass 1: potential-match counts -> global alignment scores used as the
  // secondary Hungarian objective.
  std::vector<std::int64_t> pm(n_gt * n_pred, 0);
  for (const HotaFrame& hf : prob.frames) {
    for (std::size_t i = 0; i < hf.gt_tracks.size(); ++i) {
      for (std::size_t j = 0; j < hf.pred_tracks.size(); ++j) {
        if (hf.iou[i * hf.pred_tracks.size() + j] >= alpha) {
          ++pm[static_cast<std::size_t>(hf.gt_tracks[i]) * n_pred +
               hf.pred_tracks[j]];
        }
      }
    }
  }
  std::vector<double> align(n_gt * n_pred, 0.0);
  for (std::size_t i = 0; i < n_gt; ++i) {
    for (std::size_t j = 0; j < n_pred; ++j) {
      const std::int64_t p = pm[i * n_pred + j];
      if (p > 0) {
        align[i * n_pred + j] =
            static_cast<double>(p) /
            static_cast<double>(prob.gt_count[i] + prob.pred_count[j] - p);
      }
    }
  }

  // Pass 2: per-frame optimal matching, maximizing pair count first and
  // total alignment second. Each valid pair is worth K + align with
  // K > max pair count, so one extra pair always dominates.
  std::vector<std::int64_t> tpa(n_gt * n_pred, 0);
  HotaAlpha out;
  out.alpha = alpha;
  for (const HotaFrame& hf : prob.frames) {
    const std::size_t rows = hf.gt_tracks.size();
    const std::size_t cols = hf.pred_tracks.size();
    if (rows == 0 || cols == 0) continue;
    const double big = static_cast<double>(std::min(rows, cols) + 1);
    std::vector<double> cost(rows * cols, 0.0);
    for (std::size_t i = 0; i < rows; ++i) {
      for (std::size_t j = 0; j < cols; ++j) {
        if (hf.iou[i * cols + j] >= alpha) {
          const double a =
              align[static_cast<std::size_t>(hf.gt_tracks[i]) * n_pred +
                    hf.pred_tracks[j]];
          cost[i * cols + j] = -(big + a);
        }
      }
    }
    const std::vector<int> assign = solve_assignment(
        cost, static_cast<int>(rows), static_cast<int>(cols));
    for (std::size_t i = 0; i < rows; ++i) {
      const int j = assign[i];
      if (j < 0 || hf.iou[i * cols + j] < alpha) continue;
      ++out.tp;
      ++tpa[static_cast<std::size_t>(hf.gt_tracks[i]) * n_pred +
            hf.pred_tracks[j]];
    }
  }
  out.fn = prob.total_gt - out.tp;
  out.fp = prob.total_pred - out.tp;

  // Pass 3: association accuracy from the final matching.
  for (std::size_t i = 0; i < n_gt; ++i) {
    for (std::size_t j = 0; j < n_pred; ++j) {
      const std::int64_t t = tpa[i * n_pred + j];
      if (t == 0) continue;
      const double a =
          static_cast<double>(t) /
          static_cast<double>(prob.gt_count[i] + prob.pred_count[j] - t);
      out.ass_sum += a * static_cast<double>(t);
    }
  }
  return out;
}

std::vector<HotaAlpha> hota_alpha_grid(const SequenceAnnotation& gt,
                                       const SequenceAnnotation& pred,
                                       int class_id) {
  const HotaProblem prob = build_hota_problem(gt, pred, class_id);
  std::vector<HotaAlpha> alphas;
  alphas.reserve(kHotaAlphaCount);
  for (int i = 1; i <= kHotaAlphaCount; ++i) {
    alphas.push_back(solve_hota_alpha(prob, 0.05 * i));
  }
  return alphas;
}

HotaResult finalize_hota(std::vector<HotaAlpha> alphas) {
  HotaResult out;
  out.alphas = std::move(alphas);
  double sum = 0.0;
  for (const HotaAlpha& a : out.alphas) sum += a.hota();
  out.hota = out.alphas.empty()
                 ? 0.0
                 : sum / static_cast<double>(out.alphas.size());
  return out;
}

}  // namespace

HotaResult compute_hota(const SequenceAnnotation& gt,
                        const SequenceAnnotation& pred, int class_id) {
  check_class(class_id);
  check_compatible(gt, pred);
  return finalize_hota(hota_alpha_grid(gt, pred, class_id));
}

namespace {

// Mergeable per-class tally: CLEAR counts plus per-alpha HOTA counts.
struct ClassTally {
  ClassMetrics clear;  // counts only; ratios recomputed after merging
  std::vector<HotaAlpha> alphas;

  void merge(const ClassTally& other) {
    clear.tp += other.clear.tp;
    clear.fp += other.clear.fp;
    clear.fn += other.clear.fn;
    clear.ids += other.clear.ids;
    clear.num_gt += other.clear.num_gt;
    clear.soft_tp += other.clear.soft_tp;
    if (alphas.empty()) {
      alphas = other.alphas;
      return;
    }
    for (std::size_t i = 0; i < alphas.size(); ++i) {
      alphas[i].tp += other.alphas[i].tp;
      alphas[i].fn += other.alphas[i].fn;
      alphas[i].fp += other.alphas[i].fp;
      alphas[i].ass_sum += other.alphas[i].ass_sum;
    }
  }
};

ClassMetrics finalize_class(const ClassTally& tally) {
  ClassMetrics m = tally.clear;
  m.hota_detail = finalize_hota(tally.alphas);
  if (m.num_gt == 0) {
    m.motsa = kNaN;
    m.smotsa = kNaN;
    m.hota = kNaN;
  } else {
    m.motsa = static_cast<double>(m.tp - m.fp - m.ids) /
              static_cast<double>(m.num_gt);
    m.smotsa = (m.soft_tp - static_cast<double>(m.fp + m.ids)) /
               static_cast<double>(m.num_gt);
    m.hota = m.hota_detail.hota;
  }
  return m;
}

}  // namespace

MetricsReport evaluate_sequences(
    const std::vector<std::pair<const SequenceAnnotation*,
                                const SequenceAnnotation*>>& pairs,
    const std::vector<int>& classes, int jobs) {
  if (classes.empty()) {
    throw std::invalid_argument("evaluate: no classes requested");
  }
  for (int c : classes) check_class(c);
  if (jobs < 1) {
    throw std::invalid_argument("evaluate: jobs must be >= 1");
  }

  // One tally per (sequence, class), computed independently.
  std::vector<std::vector<ClassTally>> tallies(
      pairs.size(), std::vector<ClassTally>(classes.size()));
  parallel_for(jobs, pairs.size(), [&](std::size_t s) {
    const SequenceAnnotation& gt = *pairs[s].first;
    const SequenceAnnotation& pred = *pairs[s].second;
    validate_annotation(gt);
    validate_annotation(pred);
    check_compatible(gt, pred);
    for (std::size_t c = 0; c < classes.size(); ++c) {
      ClassTally& tally = tallies[s][c];
      tally.clear = compute_mots_metrics(gt, pred, classes[c]);
      tally.alphas = hota_alpha_grid(gt, pred, classes[c]);
    }
  });

  MetricsReport report;
  ClassTally aggregate;
  for (std::size_t c = 0; c < classes.size(); ++c) {
    ClassTally merged;
    for (std::size_t s = 0; s < pairs.size(); ++s) {
      merged.merge(tallies[s][c]);
    }
    aggregate.merge(merged);
    report.per_class[classes[c]] = finalize_class(merged);
  }
  report.aggregate = finalize_class(aggregate);
  return report;
}

MetricsReport evaluate(const SequenceAnnotation& gt,
                       const SequenceAnnotation& pred,
                       const std::vector<int>& classes) {
  return evaluate_sequences({{&gt, &pred}}, classes, 1);
}

SequenceAnnotation resolve_overlaps(const SequenceAnnotation& ann) {
  SequenceAnnotation out;
  out.sequence_id = ann.sequence_id;
  out.frame_count = ann.frame_count;
  out.image_height = ann.image_height;
  out.image_width = ann.image_width;
  out.ignore_regions = ann.ignore_regions;
  for (const auto& [frame, entries] : ann.frames) {
    std::vector<RoiPlacement> placements;
    placements.reserve(entries.size());
    for (const AnnEntry& e : entries) {
      RoiPlacement p;
      p.mask = rle_decode(e.mask);
      p.x0 = 0;
      p.y0 = 0;
      p.score = 0.0;
      p.id = e.track_id;
      placements.push_back(std::move(p));
    }
    const std::vector<BinaryMask> resolved =
        paste_roi(ann.image_height, ann.image_width, placements);
    std::vector<AnnEntry> new_entries;
    new_entries.reserve(entries.size());
    for (std::size_t i = 0; i < entries.size(); ++i) {
      AnnEntry e = entries[i];
      e.mask = rle_encode(resolved[i]);
      new_entries.push_back(std::move(e));
    }
    out.frames[frame] = std::move(new_entries);
  }
  return out;
}

}  // namespace mots

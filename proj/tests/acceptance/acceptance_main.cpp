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
//
// Release gate: one self-contained check per core guarantee, each printed
// as a single PASS/FAIL line with its runtime. Every check is scored
// against an independent oracle (reference codec, brute-force evaluator,
// closed-form calculus) or an exactly computable fixture, never against
// the library's own output. The process exit code is the number of
// failures, so CI can gate on it directly.

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "motskit/dataset.hpp"
#include "motskit/losses.hpp"
#include "motskit/mask.hpp"
#include "motskit/metrics.hpp"
#include "motskit/refine.hpp"
#include "motskit/synth.hpp"
#include "motskit/temporal.hpp"
#include "motskit/tracking.hpp"
#include "reference/brute_force_metrics.hpp"
#include "reference/giou_gradient.hpp"
#include "reference/reference_rle.hpp"
#include "rle_fixtures.hpp"
#include "test_util.hpp"

namespace {

using mots::BBox;
using mots::BinaryMask;
using mots::SequenceAnnotation;
using testutil::Instance;
using testutil::make_annotation;
using testutil::rect_mask;
using testutil::SplitMix;

std::string fail_at(const char* what, int iteration) {
  std::ostringstream out;
  out << what << " (iteration " << iteration << ")";
  return out.str();
}

// ---------------------------------------------------------------------------
// 1. Depth-granularity refinement invariants.

std::string criterion_refinement() {
  SplitMix rng(101);
  for (int it = 0; it < 1000; ++it) {
    const int h = 1 + rng.below(32);
    const int w = 1 + rng.below(32);

    // Range property on arbitrary finite depth.
    mots::DepthMap depth(h, w);
    for (double& v : depth.values) v = rng.in(-40.0, 40.0);
    const mots::DepthMap norm = mots::normalize_depth(depth);
    double lo = 2.0, hi = -1.0;
    for (double v : norm.values) {
      if (v < 0.0 || v > 1.0) return fail_at("normalized depth left [0,1]", it);
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
    const auto [dmin, dmax] =
        std::minmax_element(depth.values.begin(), depth.values.end());
    if (*dmin < *dmax && (lo != 0.0 || hi != 1.0)) {
      return fail_at("normalization must span [0,1] exactly", it);
    }

    // Affine invariance: positive rescaling plus shift changes nothing.
    mots::DepthMap grid(h, w);
    for (double& v : grid.values) v = static_cast<double>(rng.below(641) - 320);
    const double a = std::array<double, 4>{0.5, 1.0, 2.0, 3.0}[rng.below(4)];
    const double b = static_cast<double>(rng.below(21) - 10);
    mots::DepthMap affine(h, w);
    for (std::size_t i = 0; i < grid.values.size(); ++i) {
      affine.values[i] = a * grid.values[i] + b;
    }
    const mots::DepthMap ng = mots::normalize_depth(grid);
    const mots::DepthMap na = mots::normalize_depth(affine);
    for (std::size_t i = 0; i < ng.values.size(); ++i) {
      if (std::abs(ng.values[i] - na.values[i]) > 1e-12) {
        return fail_at("normalization is not affine-invariant", it);
      }
    }

    // Constant depth turns refinement into an exact identity, and
    // binarization then reduces to simple thresholding of the base.
    mots::SoftMask base(h, w);
    for (double& v : base.values) v = rng.unit();
    mots::DepthMap flat(h, w);
    const double level = rng.in(-5.0, 5.0);
    for (double& v : flat.values) v = level;
    mots::DgmParams params;
    params.k = 1 + rng.below(3);
    params.tau_prod = rng.in(0.05, 0.95);
    const BBox box{0.0, 0.0, static_cast<double>(w), static_cast<double>(h)};
    const mots::RefinedRoi flat_refined =
        mots::refine_mask(base, flat, box, params);
    if (flat_refined.product.values != base.values) {
      return fail_at("constant depth must refine to the base exactly", it);
    }
    const BinaryMask binarized = mots::binarize(flat_refined, params);
    for (std::size_t i = 0; i < base.values.size(); ++i) {
      const bool want = base.values[i] >= params.tau_prod;
      if (static_cast<bool>(binarized.data[i]) != want) {
        return fail_at("binarize must threshold the product", it);
      }
    }

    // Monotonicity: raising base confidence never lowers the product.
    mots::SoftMask raised(h, w);
    for (std::size_t i = 0; i < base.values.size(); ++i) {
      raised.values[i] = std::min(1.0, base.values[i] + 0.5 * rng.unit());
    }
    const mots::RefinedRoi p0 = mots::refine_mask(base, depth, box, params);
    const mots::RefinedRoi p1 = mots::refine_mask(raised, depth, box, params);
    for (std::size_t i = 0; i < p0.product.values.size(); ++i) {
      if (p1.product.values[i] < p0.product.values[i]) {
        return fail_at("refinement must be monotone in the base mask", it);
      }
    }
  }
  return {};
}

// ---------------------------------------------------------------------------
// 2. Logarithmic GIoU loss against closed-form calculus.

std::string criterion_giou() {
  const BBox unit{0.0, 0.0, 1.0, 1.0};
  if (mots::giou_loss(unit, unit) != 0.0) {
    return "perfect overlap must cost exactly zero";
  }
  // Disjoint unit squares with a one-box gap: GIoU = -1/3, loss = ln 3.
  if (std::abs(mots::giou_loss(unit, BBox{2.0, 0.0, 3.0, 1.0}) -
               std::log(3.0)) > 1e-12) {
    return "hand-computed ln(3) case is off";
  }
  // Diagonal half-overlap: GIoU = -5/63, loss = ln(63/29).
  if (std::abs(mots::giou_loss(BBox{0.0, 0.0, 2.0, 2.0},
                               BBox{1.0, 1.0, 3.0, 3.0}) -
               std::log(63.0 / 29.0)) > 1e-12) {
    return "hand-computed ln(63/29) case is off";
  }

  const refgrad::Box target{1.0, 1.0, 3.0, 3.0};
  const BBox target_box{1.0, 1.0, 3.0, 3.0};
  const auto loss_vec = [&](const std::vector<double>& x) {
    return mots::giou_loss(BBox{x[0], x[1], x[2], x[3]}, target_box);
  };
  SplitMix rng(202);
  int tested = 0;
  for (int draw = 0; draw < 4000 && tested < 200; ++draw) {
    const double x1 = rng.in(-2.0, 4.0);
    const double y1 = rng.in(-2.0, 4.0);
    const refgrad::Box pred{x1, y1, x1 + rng.in(0.3, 3.0),
                            y1 + rng.in(0.3, 3.0)};
    if (!refgrad::giou_sample_is_smooth(pred, target, 0.05)) continue;
    ++tested;
    const std::array<double, 4> want = refgrad::giou_loss_grad_pred(pred, target);
    const std::vector<double> got = mots::numeric_gradient(
        loss_vec, {pred.x1, pred.y1, pred.x2, pred.y2}, 1e-6);
    for (int k = 0; k < 4; ++k) {
      const double tol = 1e-4 * std::max(1.0, std::abs(want[k]));
      if (std::abs(got[k] - want[k]) > tol) {
        return fail_at("numeric gradient disagrees with calculus", draw);
      }
    }
  }
  if (tested < 100) return "smoothness filter rejected too many samples";
  return {};
}

// ---------------------------------------------------------------------------
// 3. CLEAR-style metrics against a brute-force evaluator.

void random_micro_sequence(std::uint64_t seed, SequenceAnnotation* gt,
                           SequenceAnnotation* pred) {
  // Slot s occupies rows [5s, 5s+4], which keeps each side's masks
  // disjoint while gt and pred still overlap freely across sides.
  SplitMix rng(seed);
  const int frames = 1 + rng.below(5);
  const int slots = 1 + rng.below(3);
  std::vector<Instance> gt_inst;
  std::vector<Instance> pred_inst;
  for (int f = 0; f < frames; ++f) {
    for (int s = 0; s < slots; ++s) {
      const int band = s * 5;
      const int gy0 = band + rng.below(2);
      const int gh = 1 + rng.below(3);
      const int gx0 = rng.below(10);
      const int gw = 1 + rng.below(6);
      const bool has_gt = rng.below(10) < 8;
      if (has_gt) {
        gt_inst.push_back({f, s + 1, mots::kClassCar,
                           rect_mask(16, 16, gy0, gx0, gy0 + gh, gx0 + gw)});
      }
      if (rng.below(10) < 8) {
        int py0 = gy0, ph = gh, px0 = gx0, pw = gw;
        if (!has_gt || rng.below(10) < 4) {
          py0 = band + rng.below(2);
          ph = 1 + rng.below(3);
          px0 = rng.below(10);
          pw = 1 + rng.below(6);
        } else {
          px0 = std::min(15, px0 + rng.below(2));
        }
        pred_inst.push_back({f, 10 * (s + 1) + rng.below(2), mots::kClassCar,
                             rect_mask(16, 16, py0, px0, py0 + ph, px0 + pw)});
      }
    }
  }
  *gt = make_annotation("seq", frames, 16, 16, gt_inst);
  *pred = make_annotation("seq", frames, 16, 16, pred_inst);
}

std::string criterion_clear_metrics() {
  // Hand-worked fixture: a 5-pixel gt strip matched by a 4-pixel subset
  // (IoU 4/5, soft score 0.8), one missed gt object, one spurious
  // prediction. tp=fp=fn=1 over num_gt=2, so MOTSA = 0 and
  // sMOTSA = (0.8 - 1)/2 = -0.1.
  const SequenceAnnotation hand_gt = make_annotation(
      "s", 1, 16, 16,
      {{0, 1, mots::kClassCar, rect_mask(16, 16, 0, 0, 1, 5)},
       {0, 2, mots::kClassCar, rect_mask(16, 16, 10, 10, 12, 12)}});
  const SequenceAnnotation hand_pred = make_annotation(
      "s", 1, 16, 16,
      {{0, 4, mots::kClassCar, rect_mask(16, 16, 0, 0, 1, 4)},
       {0, 5, mots::kClassCar, rect_mask(16, 16, 5, 5, 7, 7)}});
  const mots::ClassMetrics hand =
      mots::compute_mots_metrics(hand_gt, hand_pred, mots::kClassCar);
  if (hand.tp != 1 || hand.fp != 1 || hand.fn != 1 || hand.ids != 0 ||
      hand.num_gt != 2 || hand.motsa != 0.0 ||
      std::abs(hand.smotsa - (-0.1)) > 1e-12) {
    return "hand-worked MOTSA-zero fixture is off";
  }

  // Identity switch: one steady gt track predicted as ids a, a, b.
  const BinaryMask steady = rect_mask(8, 8, 2, 2, 6, 6);
  std::vector<Instance> sw_gt, sw_pred;
  const int pred_ids[3] = {4, 4, 9};
  for (int f = 0; f < 3; ++f) {
    sw_gt.push_back({f, 1, mots::kClassCar, steady});
    sw_pred.push_back({f, pred_ids[f], mots::kClassCar, steady});
  }
  const mots::ClassMetrics sw = mots::compute_mots_metrics(
      make_annotation("s", 3, 8, 8, sw_gt),
      make_annotation("s", 3, 8, 8, sw_pred), mots::kClassCar);
  if (sw.tp != 3 || sw.ids != 1 ||
      std::abs(sw.motsa - 2.0 / 3.0) > 1e-12) {
    return "a,a,b fixture must count exactly one id switch";
  }

  for (std::uint64_t seed = 1; seed <= 500; ++seed) {
    SequenceAnnotation gt, pred;
    random_micro_sequence(seed, &gt, &pred);
    const mots::ClassMetrics lib =
        mots::compute_mots_metrics(gt, pred, mots::kClassCar);
    const bruteforce::ClearCounts ref =
        bruteforce::evaluate_clear(gt, pred, mots::kClassCar);
    const int it = static_cast<int>(seed);
    if (lib.tp != ref.tp || lib.fp != ref.fp || lib.fn != ref.fn ||
        lib.ids != ref.ids || lib.num_gt != ref.num_gt) {
      return fail_at("integer tallies disagree with brute force", it);
    }
    if (std::abs(lib.soft_tp - ref.soft_tp) > 1e-9) {
      return fail_at("soft TP disagrees with brute force", it);
    }
    if (ref.num_gt > 0) {
      if (std::abs(lib.motsa - ref.motsa) > 1e-12 ||
          std::abs(lib.smotsa - ref.smotsa) > 1e-12) {
        return fail_at("ratios disagree with brute force", it);
      }
    } else if (!std::isnan(lib.motsa) || !std::isnan(lib.smotsa)) {
      return fail_at("empty ground truth must yield NaN ratios", it);
    }
  }
  return {};
}

// ---------------------------------------------------------------------------
// 4. HOTA exactness on analytically solvable fixtures.

std::string criterion_hota() {
  // Perfect tracking scores exactly 1 at every alpha.
  std::vector<Instance> perfect;
  for (int f = 0; f < 3; ++f) {
    perfect.push_back({f, 1, mots::kClassCar, rect_mask(16, 16, 0, 0, 4, 4)});
    perfect.push_back({f, 2, mots::kClassCar, rect_mask(16, 16, 8, 0, 12, 4)});
  }
  const SequenceAnnotation ideal = make_annotation("s", 3, 16, 16, perfect);
  const mots::HotaResult exact = mots::compute_hota(ideal, ideal,
                                                    mots::kClassCar);
  if (exact.hota != 1.0) return "perfect tracking must score exactly 1";
  if (static_cast<int>(exact.alphas.size()) != mots::kHotaAlphaCount) {
    return "alpha grid must have 19 points";
  }
  for (const mots::HotaAlpha& a : exact.alphas) {
    if (a.det_a() != 1.0 || a.ass_a() != 1.0) {
      return "perfect tracking must decompose into DetA = AssA = 1";
    }
  }

  // One gt track split across two prediction identities: DetA = 1 and
  // AssA = 1/2 at every alpha, so HOTA = sqrt(1/2).
  const SequenceAnnotation one_track = make_annotation(
      "s", 2, 16, 16,
      {{0, 1, mots::kClassCar, rect_mask(16, 16, 0, 0, 4, 4)},
       {1, 1, mots::kClassCar, rect_mask(16, 16, 0, 0, 4, 4)}});
  const SequenceAnnotation split = make_annotation(
      "s", 2, 16, 16,
      {{0, 7, mots::kClassCar, rect_mask(16, 16, 0, 0, 4, 4)},
       {1, 8, mots::kClassCar, rect_mask(16, 16, 0, 0, 4, 4)}});
  const mots::HotaResult halves =
      mots::compute_hota(one_track, split, mots::kClassCar);
  if (std::abs(halves.hota - std::sqrt(0.5)) > 1e-9) {
    return "identity split must score sqrt(1/2)";
  }

  // Dropping one of four detections: DetA = AssA = 3/4 at every alpha,
  // and sqrt(9/16) = 0.75 is exact in binary floating point.
  std::vector<Instance> four, three;
  for (int f = 0; f < 4; ++f) {
    four.push_back({f, 1, mots::kClassCar, rect_mask(16, 16, 0, 0, 4, 4)});
    if (f < 3) {
      three.push_back({f, 9, mots::kClassCar, rect_mask(16, 16, 0, 0, 4, 4)});
    }
  }
  const mots::HotaResult dropped =
      mots::compute_hota(make_annotation("s", 4, 16, 16, four),
                         make_annotation("s", 4, 16, 16, three),
                         mots::kClassCar);
  if (dropped.hota != 0.75) return "dropped detection case must be 0.75";

  // Scalar/decomposition consistency on adversarial random sequences.
  for (std::uint64_t seed = 2001; seed <= 2025; ++seed) {
    SequenceAnnotation gt, pred;
    random_micro_sequence(seed, &gt, &pred);
    const mots::HotaResult random_case =
        mots::compute_hota(gt, pred, mots::kClassCar);
    double mean = 0.0;
    for (const mots::HotaAlpha& a : random_case.alphas) {
      const std::int64_t den = a.tp + a.fn + a.fp;
      const double det = den == 0 ? 0.0 : static_cast<double>(a.tp) / den;
      const double ass =
          a.tp == 0 ? 0.0 : a.ass_sum / static_cast<double>(a.tp);
      if (std::abs(a.hota() - std::sqrt(det * ass)) != 0.0) {
        return fail_at("per-alpha decomposition drifted from its tallies",
                       static_cast<int>(seed));
      }
      mean += a.hota();
    }
    mean /= static_cast<double>(random_case.alphas.size());
    if (std::abs(random_case.hota - mean) > 1e-12) {
      return fail_at("scalar must be the mean of the per-alpha scores",
                     static_cast<int>(seed));
    }
  }
  return {};
}

// ---------------------------------------------------------------------------
// 5. RLE codec round-trip plus reference-encoder agreement.

std::string criterion_rle() {
  // Frozen fixtures first: handmade shapes and generator-produced masks.
  for (const fixtures::RleCase& c : fixtures::kRleCases) {
    BinaryMask mask;
    if (c.density >= 0) {
      mask = testutil::random_mask(c.height, c.width, c.seed, c.density);
    } else if (std::string(c.name) == "A_3x3_center") {
      mask = rect_mask(3, 3, 1, 1, 2, 2);
    } else if (std::string(c.name) == "B_2x2_empty") {
      mask = BinaryMask(2, 2);
    } else if (std::string(c.name) == "C_2x2_full") {
      mask = rect_mask(2, 2, 0, 0, 2, 2);
    } else {  // I_3x4_toprow
      mask = rect_mask(3, 4, 0, 0, 1, 4);
    }
    if (mots::rle_encode(mask).counts != c.counts) {
      return std::string("frozen fixture drifted: ") + c.name;
    }
  }

  SplitMix rng(303);
  for (int it = 0; it < 1000; ++it) {
    const int h = 1 + rng.below(64);
    const int w = 1 + rng.below(64);
    const BinaryMask mask =
        testutil::random_mask(h, w, rng.next(), rng.below(101));
    const mots::RleMask rle = mots::rle_encode(mask);
    if (rle.counts != refrle::encode(mask.data, h, w)) {
      return fail_at("encoder disagrees with the reference", it);
    }
    if (mots::rle_decode(rle) != mask) {
      return fail_at("decode(encode(m)) != m", it);
    }
    if (refrle::decode(rle.counts, h, w) != mask.data) {
      return fail_at("reference decoder rejects our encoding", it);
    }
    if (mots::rle_area(rle) !=
        static_cast<std::int64_t>(
            std::count(mask.data.begin(), mask.data.end(), 1))) {
      return fail_at("area must match the pixel count", it);
    }
  }
  return {};
}

// ---------------------------------------------------------------------------
// 6. Temporal warping and aggregation invariants.

std::string criterion_temporal() {
  SplitMix rng(404);
  mots::FeatureMap src(2, 8, 10);
  for (double& v : src.values) v = rng.in(-3.0, 3.0);

  const mots::FlowField zero(8, 10);
  if (mots::warp(src, zero).values != src.values) {
    return "zero flow must be an exact identity";
  }

  mots::FeatureMap strip(1, 1, 4);
  strip.values = {10.0, 20.0, 30.0, 40.0};
  mots::FlowField shift(1, 4);
  std::fill(shift.dx.begin(), shift.dx.end(), 1.0);
  const std::vector<double> want{20.0, 30.0, 40.0, 40.0};
  if (mots::warp(strip, shift).values != want) {
    return "integer flow must reduce to clamped indexing";
  }

  mots::FeatureMap other(2, 8, 10);
  for (double& v : other.values) v = rng.in(-3.0, 3.0);
  mots::FlowField flow(8, 10);
  for (std::size_t i = 0; i < flow.dx.size(); ++i) {
    flow.dx[i] = rng.in(-2.5, 2.5);
    flow.dy[i] = rng.in(-2.5, 2.5);
  }
  mots::FeatureMap combo(2, 8, 10);
  for (std::size_t i = 0; i < combo.values.size(); ++i) {
    combo.values[i] = 2.0 * src.values[i] + 3.0 * other.values[i];
  }
  const mots::FeatureMap wa = mots::warp(src, flow);
  const mots::FeatureMap wb = mots::warp(other, flow);
  const mots::FeatureMap wc = mots::warp(combo, flow);
  for (std::size_t i = 0; i < wc.values.size(); ++i) {
    if (std::abs(wc.values[i] - (2.0 * wa.values[i] + 3.0 * wb.values[i])) >
        1e-9) {
      return "warp must be linear in the source";
    }
  }

  if (mots::aggregate(src, {src, src}).values != src.values) {
    return "aggregating identical maps must be an exact no-op";
  }
  return {};
}

// ---------------------------------------------------------------------------
// 7. Refinement beats coarse masks; the clean pipeline is perfect.

std::string criterion_pipeline() {
  std::int64_t improved = 0, total = 0;
  for (std::uint64_t seed = 1; seed <= 50; ++seed) {
    const mots::SynthSpec spec{seed, 4, 3, 96, 96,
                               1 + static_cast<int>(seed % 2), 8};
    const mots::SynthScene scene = mots::synthesize(spec);
    const mots::DgmParams params;
    for (int f = 0; f < spec.frames; ++f) {
      const auto& dets = scene.detections[f];
      std::vector<BinaryMask> coarse;
      std::vector<mots::RoiPlacement> placements;
      coarse.reserve(dets.size());
      placements.reserve(dets.size());
      for (std::size_t i = 0; i < dets.size(); ++i) {
        coarse.push_back(mots::rle_decode(dets[i].mask));
        mots::SoftMask soft(96, 96);
        for (std::size_t p = 0; p < soft.values.size(); ++p) {
          soft.values[p] = coarse.back().data[p] ? 1.0 : 0.0;
        }
        const mots::RefinedRoi refined =
            mots::refine_mask(soft, scene.depth[f], dets[i].bbox, params);
        placements.push_back({mots::binarize(refined, params), refined.roi.x0,
                              refined.roi.y0, dets[i].score,
                              static_cast<int>(i)});
      }
      const std::vector<BinaryMask> pasted =
          mots::paste_roi(96, 96, placements);
      for (std::size_t i = 0; i < dets.size(); ++i) {
        const int track = scene.det_track_ids[f][i];
        const BinaryMask* gt_mask = nullptr;
        BinaryMask decoded;
        for (const mots::AnnEntry& e : scene.gt.frames.at(f)) {
          if (e.track_id == track) {
            decoded = mots::rle_decode(e.mask);
            gt_mask = &decoded;
            break;
          }
        }
        if (gt_mask == nullptr) return "detection without ground truth";
        ++total;
        if (mots::mask_iou(pasted[i], *gt_mask) >=
            mots::mask_iou(coarse[i], *gt_mask)) {
          ++improved;
        }
      }
    }
  }
  if (improved * 10 < total * 9) {
    std::ostringstream out;
    out << "refinement helped only " << improved << "/" << total
        << " instances";
    return out.str();
  }

  // Clean detections through the full pipeline must score perfectly.
  const mots::SynthScene clean =
      mots::synthesize(mots::SynthSpec{123, 5, 4, 96, 96, 0, 8});
  const SequenceAnnotation labeled = mots::run_labeler_pipeline(
      clean.detections, clean.depth, mots::DgmParams{}, mots::AssocParams{}, 2,
      clean.gt.sequence_id);
  const mots::MetricsReport report = mots::evaluate(
      clean.gt, labeled, {mots::kClassCar, mots::kClassPedestrian});
  const mots::ClassMetrics& agg = report.aggregate;
  if (agg.smotsa != 1.0 || agg.motsa != 1.0 || agg.hota != 1.0 ||
      agg.ids != 0) {
    std::ostringstream out;
    out << "clean pipeline scored smotsa=" << agg.smotsa
        << " motsa=" << agg.motsa << " hota=" << agg.hota
        << " ids=" << agg.ids;
    return out.str();
  }
  return {};
}

// ---------------------------------------------------------------------------
// 8. Dataset round-trip, subsampling, and the protocol table.

std::string criterion_dataset() {
  SequenceAnnotation ann = make_annotation(
      "0002", 10, 16, 16,
      {{0, 1, mots::kClassCar, rect_mask(16, 16, 0, 0, 4, 4)},
       {5, 1, mots::kClassCar, rect_mask(16, 16, 1, 0, 5, 4)},
       {5, 2, mots::kClassPedestrian, rect_mask(16, 16, 8, 8, 12, 12)},
       {9, 2, mots::kClassPedestrian, rect_mask(16, 16, 9, 8, 13, 12)}});
  ann.ignore_regions[3].push_back(
      mots::rle_encode(rect_mask(16, 16, 14, 0, 16, 16)));
  ann.frame_count = 10;
  const SequenceAnnotation reparsed =
      mots::parse_mots_txt(mots::write_mots_txt(ann), "0002");
  if (!(reparsed == ann)) return "write/parse round trip changed the data";

  const SequenceAnnotation sub = mots::subsample_every_n(ann, 5);
  if (sub.frame_count != 2) return "stride-5 subsample must keep 2 frames";
  if (sub.frames.count(0) != 1 || sub.frames.count(1) != 1 ||
      sub.frames.size() != 2) {
    return "subsampled frames must be reindexed densely";
  }
  if (sub.frames.at(1) != ann.frames.at(5)) {
    return "frame 5 must become frame 1 unchanged";
  }
  if (!sub.ignore_regions.empty()) {
    return "ignore region off the stride must be dropped";
  }

  mots::StatsReport table;
  table.video_clips = 21;
  table.total_frames = 8008;
  table.identities = 749;
  table.instances = 38197;
  table.instances_per_frame = 4.78;
  const std::string want =
      "Clips | Frames | Identities | Instances | Ins./Fr.\n"
      "21 | 8K | 749 | 38K | 4.78\n";
  if (mots::format_stats_table(table) != want) {
    return "protocol table formatting drifted";
  }
  return {};
}

struct Criterion {
  const char* description;
  double budget_seconds;
  std::string (*run)();
};

}  // namespace

int main() {
  const Criterion criteria[] = {
      {"depth-granularity refinement invariants", 5.0, criterion_refinement},
      {"logarithmic GIoU loss matches calculus", 5.0, criterion_giou},
      {"CLEAR metrics match the brute-force oracle", 30.0,
       criterion_clear_metrics},
      {"HOTA is exact on solvable fixtures", 30.0, criterion_hota},
      {"RLE codec agrees with the reference encoder", 5.0, criterion_rle},
      {"temporal warp/aggregate invariants", 5.0, criterion_temporal},
      {"refinement improves coarse masks end to end", 60.0,
       criterion_pipeline},
      {"dataset round-trip, subsampling, and stats table", 5.0,
       criterion_dataset},
  };

  int failures = 0;
  for (std::size_t i = 0; i < std::size(criteria); ++i) {
    const auto start = std::chrono::steady_clock::now();
    std::string detail;
    try {
      detail = criteria[i].run();
    } catch (const std::exception& e) {
      detail = std::string("unexpected exception: ") + e.what();
    }
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
            .count();
    if (detail.empty() && seconds > criteria[i].budget_seconds) {
      std::ostringstream out;
      out << "exceeded the " << criteria[i].budget_seconds << "s budget";
      detail = out.str();
    }
    const bool ok = detail.empty();
    failures += ok ? 0 : 1;
    std::printf("%s criterion %zu: %s (%.2fs)%s%s%s\n", ok ? "PASS" : "FAIL",
                i + 1, criteria[i].description, seconds, ok ? "" : " [",
                detail.c_str(), ok ? "" : "]");
  }
  return failures;
}

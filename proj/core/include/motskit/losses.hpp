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

#ifndef MOTSKIT_LOSSES_HPP_
#define MOTSKIT_LOSSES_HPP_

#include <functional>
#include <vector>

#include "motskit/mask.hpp"
#include "motskit/refine.hpp"

namespace mots {

// The five training-objective components and their sum. The invariant
// total == box + cls + mask + track + depth holds for every value
// produced by total_loss; when weights are supplied the stored components
// are already scaled so the invariant is preserved.
struct LossBreakdown {
  double box = 0.0;
  double cls = 0.0;
  double mask = 0.0;
  double track = 0.0;
  double depth = 0.0;
  double total = 0.0;
};

// Per-component multipliers for total_loss; defaults reproduce the plain
// unweighted sum.
struct LossWeights {
  double box = 1.0;
  double cls = 1.0;
  double mask = 1.0;
  double track = 1.0;
  double depth = 1.0;
};

struct EmbeddingPair {
  std::vector<double> anchor;
  std::vector<double> other;
  bool same_identity = false;
};

// Logarithmic GIoU box loss: -ln((1 + GIoU) / 2). The log argument is
// capped below at 1e-12 so a GIoU of exactly -1 yields a large finite
// value instead of infinity. Compared to the linear 1 - GIoU loss this
// form amplifies hard samples (GIoU near -1).
double giou_loss(const BBox& pred, const BBox& target);

// Cross-entropy against a one-hot target: -ln(scores[true_index]).
// The distribution must sum to 1 within 1e-6 with entries in [0, 1];
// the picked score is floored at 1e-12 before the logarithm.
double cls_loss(const std::vector<double>& scores, int true_index);

// Per-pixel binary cross-entropy, averaged over pixels. Predictions are
// clamped to [eps, 1 - eps] with eps = 1e-7 before the logarithms.
double mask_loss(const SoftMask& pred, const BinaryMask& target);

// Margin hinge on embedding L2 distances, averaged over pairs:
// same identity contributes max(0, d), different identities contribute
// max(0, margin - d).
double track_loss(const std::vector<EmbeddingPair>& pairs, double margin);

// Assembles the overall objective as the (optionally weighted) sum of the
// five components. All components must be finite and non-negative.
LossBreakdown total_loss(double box, double cls, double mask, double track,
                         double depth = 0.0,
                         const LossWeights& weights = LossWeights{});

// Central-difference gradient of f at x: component i is
// (f(x + eps*e_i) - f(x - eps*e_i)) / (2*eps).
std::vector<double> numeric_gradient(
    const std::function<double(const std::vector<double>&)>& f,
    const std::vector<double>& x, double eps);

}  // namespace mots

#endif  // MOTSKIT_LOSSES_HPP_

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

#include "motskit/losses.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace mots {

namespace {

constexpr double kLogFloor = 1e-12;
constexpr double kBceEps = 1e-7;

double l2_distance(const std::vector<double>& a, const std::vector<double>& b) {
  double sq = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    sq += d * d;
  }
  return std::sqrt(sq);
}

}  // namespace

double giou_loss(const BBox& pred, const BBox& target) {
  const double giou = box_giou(pred, target);
  const double arg = std::max((1.0 + giou) / 2.0, kLogFloor);
  return -std::log(arg);
}

double cls_loss(const std::vector<double>& scores, int true_index) {
  if (scores.empty()) {
    throw std::invalid_argument("cls_loss: empty score vector");
  }
  if (true_index < 0 || true_index >= static_cast<int>(scores.size())) {
    throw std::invalid_argument("cls_loss: true index out of range");
  }
  double sum = 0.0;
  for (double s : scores) {
    if (!(s >= 0.0) || !(s <= 1.0)) {
      throw std::invalid_argument("cls_loss: score outside [0, 1]");
    }
    sum += s;
  }
  if (std::abs(sum - 1.0) > 1e-6) {
    throw std::invalid_argument("cls_loss: scores sum to " +
                                std::to_string(sum) + ", expected 1");
  }
  return -std::log(std::max(scores[true_index], kLogFloor));
}

double mask_loss(const SoftMask& pred, const BinaryMask& target) {
  if (pred.height != target.height || pred.width != target.width) {
    throw std::invalid_argument("mask_loss: shape mismatch");
  }
  if (pred.values.empty()) {
    throw std::invalid_argument("mask_loss: empty mask");
  }
  double sum = 0.0;
  for (std::size_t i = 0; i < pred.values.size(); ++i) {
    const double p = std::clamp(pred.values[i], kBceEps, 1.0 - kBceEps);
    const double t = target.data[i] ? 1.0 : 0.0;
    sum -= t * std::log(p) + (1.0 - t) * std::log(1.0 - p);
  }
  return sum / static_cast<double>(pred.values.size());
}

double track_loss(const std::vector<EmbeddingPair>& pairs, double margin) {
  if (pairs.empty()) {
    throw std::invalid_argument("track_loss: empty pair list");
  }
  if (!(margin > 0.0)) {
    throw std::invalid_argument("track_loss: margin must be positive");
  }
  double sum = 0.0;
  for (const EmbeddingPair& pair : pairs) {
    if (pair.anchor.size() != pair.other.size()) {
      throw std::invalid_argument("track_loss: embedding length mismatch");
    }
    const double d = l2_distance(pair.anchor, pair.other);
    sum += pair.same_identity ? std::max(0.0, d) : std::max(0.0, margin - d);
  }
  return sum / static_cast<double>(pairs.size());
}

LossBreakdown total_loss(double box, double cls, double mask, double track,
                         double depth, const LossWeights& weights) {
  const double raw[5] = {box, cls, mask, track, depth};
  const double w[5] = {weights.box, weights.cls, weights.mask, weights.track,
                       weights.depth};
  for (int i = 0; i < 5; ++i) {
    if (!std::isfinite(raw[i]) || raw[i] < 0.0) {
      throw std::invalid_argument(
          "total_loss: components must be finite and non-negative");
    }
    if (!std::isfinite(w[i]) || w[i] < 0.0) {
      throw std::invalid_argument(
          "total_loss: weights must be finite and non-negative");
    }
  }
  LossBreakdown out;
  out.box = w[0] * box;
  out.cls = w[1] * cls;
  out.mask = w[2] * mask;
  out.track = w[3] * track;
  out.depth = w[4] * depth;
  out.total = out.box + out.cls + out.mask + out.track + out.depth;
  return out;
}

std::vector<double> numeric_gradient(
    const std::function<double(const std::vector<double>&)>& f,
    const std::vector<double>& x, double eps) {
  if (!(eps > 0.0)) {
    throw std::invalid_argument("numeric_gradient: eps must be positive");
  }
  std::vector<double> grad(x.size(), 0.0);
  std::vector<double> probe = x;
  for (std::size_t i = 0; i < x.size(); ++i) {
    probe[i] = x[i] + eps;
    const double hi = f(probe);
    probe[i] = x[i] - eps;
    const double lo = f(probe);
    probe[i] = x[i];
    if (!std::isfinite(hi) || !std::isfinite(lo)) {
      throw std::invalid_argument(
          "numeric_gradient: non-finite evaluation near x");
    }
    grad[i] = (hi - lo) / (2.0 * eps);
  }
  return grad;
}

}  // namespace mots

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
// Microbenchmarks for the hot paths: the RLE codec, depth refinement,
// the assignment solver, and full-sequence evaluation. Inputs are
// generated with a fixed seed so runs are comparable across commits.

#include <benchmark/benchmark.h>

#include <cstdint>
#include <vector>

#include "motskit/hungarian.hpp"
#include "motskit/mask.hpp"
#include "motskit/metrics.hpp"
#include "motskit/refine.hpp"
#include "motskit/synth.hpp"
#include "motskit/tracking.hpp"

namespace {

// Deterministic generator, independent of the library under test.
class SplitMix {
 public:
  explicit SplitMix(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    state_ += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  double unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

 private:
  std::uint64_t state_;
};

mots::BinaryMask random_mask(int h, int w, std::uint64_t seed,
                             int density_pct) {
  SplitMix rng(seed);
  mots::BinaryMask mask(h, w);
  for (auto& px : mask.data) {
    px = rng.next() % 100 < static_cast<std::uint64_t>(density_pct) ? 1 : 0;
  }
  return mask;
}

void BM_RleEncode(benchmark::State& state) {
  const int side = static_cast<int>(state.range(0));
  const mots::BinaryMask mask = random_mask(side, side, 7, 40);
  for (auto _ : state) {
    benchmark::DoNotOptimize(mots::rle_encode(mask));
  }
  state.SetItemsProcessed(state.iterations() *
                          static_cast<std::int64_t>(side) * side);
}
BENCHMARK(BM_RleEncode)->Arg(64)->Arg(256)->Arg(1024);

void BM_RleDecode(benchmark::State& state) {
  const int side = static_cast<int>(state.range(0));
  const mots::RleMask rle = mots::rle_encode(random_mask(side, side, 7, 40));
  for (auto _ : state) {
    benchmark::DoNotOptimize(mots::rle_decode(rle));
  }
  state.SetItemsProcessed(state.iterations() *
                          static_cast<std::int64_t>(side) * side);
}
BENCHMARK(BM_RleDecode)->Arg(64)->Arg(256)->Arg(1024);

void BM_MaskIouRle(benchmark::State& state) {
  const int side = static_cast<int>(state.range(0));
  const mots::RleMask a = mots::rle_encode(random_mask(side, side, 7, 40));
  const mots::RleMask b = mots::rle_encode(random_mask(side, side, 8, 40));
  for (auto _ : state) {
    benchmark::DoNotOptimize(mots::mask_iou(a, b));
  }
}
BENCHMARK(BM_MaskIouRle)->Arg(64)->Arg(256)->Arg(1024);

void BM_RefineMask(benchmark::State& state) {
  const int side = static_cast<int>(state.range(0));
  SplitMix rng(11);
  mots::SoftMask base(side, side);
  for (double& v : base.values) v = rng.unit();
  mots::DepthMap depth(side, side);
  for (double& v : depth.values) v = 80.0 * rng.unit();
  const mots::BBox box{0.0, 0.0, static_cast<double>(side),
                       static_cast<double>(side)};
  const mots::DgmParams params;
  for (auto _ : state) {
    benchmark::DoNotOptimize(mots::refine_mask(base, depth, box, params));
  }
  state.SetItemsProcessed(state.iterations() *
                          static_cast<std::int64_t>(side) * side);
}
BENCHMARK(BM_RefineMask)->Arg(32)->Arg(128)->Arg(512);

void BM_SolveAssignment(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  SplitMix rng(13);
  std::vector<double> cost(static_cast<std::size_t>(n) * n);
  for (double& c : cost) c = rng.unit();
  for (auto _ : state) {
    benchmark::DoNotOptimize(mots::solve_assignment(cost, n, n));
  }
}
BENCHMARK(BM_SolveAssignment)->Arg(8)->Arg(32)->Arg(128);

void BM_Evaluate(benchmark::State& state) {
  // Self-evaluation of a synthetic scene: dominated by per-frame matching
  // and the 19-alpha HOTA sweep.
  mots::SynthSpec spec;
  spec.seed = 5;
  spec.frames = static_cast<int>(state.range(0));
  spec.objects = 6;
  spec.height = 128;
  spec.width = 128;
  const mots::SynthScene scene = mots::synthesize(spec);
  const std::vector<int> classes{mots::kClassCar, mots::kClassPedestrian};
  for (auto _ : state) {
    benchmark::DoNotOptimize(mots::evaluate(scene.gt, scene.gt, classes));
  }
}
BENCHMARK(BM_Evaluate)->Arg(5)->Arg(20);

}  // namespace

BENCHMARK_MAIN();

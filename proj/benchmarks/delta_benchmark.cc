// Copyright 2026 The treeconc Authors
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

#include <benchmark/benchmark.h>

#include "treeconc/delta.h"
#include "treeconc/figure1.h"
#include "treeconc/tree.h"

namespace treeconc {
namespace {

void BM_DescendantProfile(benchmark::State& state) {
  const RootedTree t = Generate(DaryTreeSpec{2, static_cast<int>(state.range(0))});
  for (auto _ : state) benchmark::DoNotOptimize(ComputeDescendantProfile(t, 0.6).big_delta);
  state.SetItemsProcessed(state.iterations() * t.size());
}
BENCHMARK(BM_DescendantProfile)->DenseRange(10, 18, 4);

void BM_PairDistanceSum(benchmark::State& state) {
  const RootedTree t = Generate(ThreeOneTreeSpec{static_cast<int>(state.range(0))});
  for (auto _ : state) benchmark::DoNotOptimize(PairDistanceSum(t, 0.6));
}
BENCHMARK(BM_PairDistanceSum)->DenseRange(6, 10, 2);

void BM_PairDistanceSumNaive(benchmark::State& state) {
  const RootedTree t = Generate(ThreeOneTreeSpec{static_cast<int>(state.range(0))});
  for (auto _ : state) benchmark::DoNotOptimize(PairDistanceSumNaive(t, 0.6));
}
BENCHMARK(BM_PairDistanceSumNaive)->DenseRange(6, 10, 2);

void BM_ThreeOneSeries(benchmark::State& state) {
  const int depth = static_cast<int>(state.range(0));
  const LevelProfile levels = LevelProfile::ThreeOne(depth);
  for (auto _ : state) benchmark::DoNotOptimize(ComputeDeltaSeries(levels, 0.6, depth).ratios);
}
BENCHMARK(BM_ThreeOneSeries)->DenseRange(12, 20, 4)->Unit(benchmark::kMillisecond);

void BM_Figure1Binary(benchmark::State& state) {
  const std::vector<BValue> bs = ParseBList("0.5,0.6,isqrt2,0.75");
  for (auto _ : state) {
    benchmark::DoNotOptimize(ComputeFigure1(Figure1Family::kBinary, bs, 30).series);
  }
}
BENCHMARK(BM_Figure1Binary);

}  // namespace
}  // namespace treeconc

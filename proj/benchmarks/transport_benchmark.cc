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

#include <cmath>

#include "treeconc/broadcast.h"
#include "treeconc/transport.h"
#include "treeconc/tree.h"

namespace treeconc {
namespace {

// Ising measure on a path against its tilt by the magnetization: both have
// full support, which is the solver's worst case.
void BM_WassersteinTilt(benchmark::State& state) {
  const int length = static_cast<int>(state.range(0));
  const IsingModel model(Generate(PathTreeSpec{length}), 0.2);
  const ExactMeasure nu = ComputeExactMeasure(model.model());
  std::vector<double> w(nu.num_configurations());
  double total = 0.0;
  for (std::size_t r = 0; r < w.size(); ++r) {
    w[r] = nu[r] * std::exp(0.5 * __builtin_popcountll(r));
    total += w[r];
  }
  for (double& x : w) x /= total;
  const ExactMeasure mu(nu.space(), nu.n(), w);
  const WeightedHamming metric(nu.space(), nu.n());
  for (auto _ : state) benchmark::DoNotOptimize(Wasserstein(mu, nu, metric).distance);
  state.SetComplexityN(static_cast<std::int64_t>(w.size()));
}
BENCHMARK(BM_WassersteinTilt)->DenseRange(3, 7, 2)->Unit(benchmark::kMillisecond);

void BM_MagnetizationDistribution(benchmark::State& state) {
  const IsingModel model(Generate(DaryTreeSpec{2, static_cast<int>(state.range(0))}), 0.2);
  for (auto _ : state) benchmark::DoNotOptimize(MagnetizationDistribution(model));
}
BENCHMARK(BM_MagnetizationDistribution)->DenseRange(6, 10, 2);

}  // namespace
}  // namespace treeconc

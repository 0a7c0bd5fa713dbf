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

#ifndef TREECONC_BROADCAST_H_
#define TREECONC_BROADCAST_H_

#include <array>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "treeconc/measure.h"
#include "treeconc/tree.h"

namespace treeconc {

// Root distribution plus one row-stochastic kernel per non-root vertex;
// kernel(v)[x * H + y] = q_v(y | x).
class MarkovTreeModel {
 public:
  // `kernels` holds n blocks of H*H entries; the root's block is ignored.
  MarkovTreeModel(std::shared_ptr<const RootedTree> tree, StateSpace space,
                  std::vector<double> root_dist, std::vector<double> kernels);
  // Same kernel at every non-root vertex.
  static MarkovTreeModel Homogeneous(std::shared_ptr<const RootedTree> tree,
                                     StateSpace space, std::vector<double> root_dist,
                                     std::span<const double> kernel);

  const RootedTree& tree() const { return *tree_; }
  const std::shared_ptr<const RootedTree>& shared_tree() const { return tree_; }
  const StateSpace& space() const { return space_; }
  int states() const { return space_.size(); }
  int n() const { return tree_->size(); }
  std::span<const double> root_dist() const { return root_dist_; }
  std::span<const double> kernel(VertexId v) const;
  double q(VertexId v, int from, int to) const {
    const std::size_t h = static_cast<std::size_t>(states());
    return kernels_[static_cast<std::size_t>(v) * h * h + from * h + to];
  }

 private:
  std::shared_ptr<const RootedTree> tree_;
  StateSpace space_;
  std::vector<double> root_dist_;
  std::vector<double> kernels_;
};

// Uniform root and the symmetric flip kernel [[1-p, p], [p, 1-p]] on every
// edge, p in (0, 1/2]. The kernel Lipschitz constant is b = 1 - 2p.
class IsingModel {
 public:
  IsingModel(std::shared_ptr<const RootedTree> tree, double p);
  IsingModel(const RootedTree& tree, double p);

  double p() const { return p_; }
  double b() const { return 1.0 - 2.0 * p_; }
  const MarkovTreeModel& model() const { return model_; }
  const RootedTree& tree() const { return model_.tree(); }
  int n() const { return model_.n(); }

 private:
  double p_;
  MarkovTreeModel model_;
};

// Rejects p outside (0, 1/2].
void ValidateFlipProbability(double p);

// Smallest b for which every kernel is b-Lipschitz from (H, d) to
// (Prob(H), transport distance). 0 for a single-vertex tree.
double KernelLipschitz(const MarkovTreeModel& model);

// P^m for the flip kernel, row-major.
std::array<double, 4> IsingStepMatrix(double p, int m);

// Ancestral samples. Sample s at vertex v draws from a hash of
// (seed, s, v), so results do not depend on how work is split.
std::vector<Configuration> Sample(const MarkovTreeModel& model, std::size_t count,
                                  std::uint64_t seed);

ExactMeasure ComputeExactMeasure(const MarkovTreeModel& model);

// Largest tree accepted by the magnetization and moment recursions.
inline constexpr VertexId kMaxDpVertices = 20000;

// coefficients[m] = P(number of vertices in state 1 = m). Binary models only.
// For IsingModel the result is exactly symmetric, c_m = c_{n-m}.
std::vector<double> MagnetizationDistribution(const MarkovTreeModel& model);
std::vector<double> MagnetizationDistribution(const IsingModel& model);

// Per-vertex values c_v(x) for f(x) = (1/n) sum_v c_v(x_v), row-major n x H.
// log E[exp(n lambda (f - E f))]. Each c_v must be 1-Lipschitz for the base
// metric.
double LogExpMoment(const MarkovTreeModel& model, std::span<const double> values,
                    double lambda);
double ExpMoment(const MarkovTreeModel& model, std::span<const double> values,
                 double lambda);
// Values for the magnetization f(x) = (1/n) #{v : x_v = 1}.
std::vector<double> MagnetizationValues(int n);

// log E[exp(n lambda (f - E f))] for f tabulated over configuration ranks.
double LogExpMomentFromTable(const ExactMeasure& measure, std::span<const double> f,
                             double lambda);

// Per-vertex marginals, row-major n x H.
std::vector<double> VertexMarginals(const MarkovTreeModel& model);

struct MagnetizationVariance {
  double formula = 0.0;  // pair distance sum / (4 n^2)
  std::optional<double> exact;  // from the magnetization distribution
};
MagnetizationVariance VarianceOfMagnetization(const IsingModel& model);

}  // namespace treeconc

#endif  // TREECONC_BROADCAST_H_

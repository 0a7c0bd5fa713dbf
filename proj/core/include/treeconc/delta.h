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

#ifndef TREECONC_DELTA_H_
#define TREECONC_DELTA_H_

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "treeconc/tree.h"

namespace treeconc {

// Throws std::invalid_argument unless 0 <= b < 1.
void ValidateContraction(double b);

// The descendant generating function delta(v) = sum_r |D_r(v)| b^r for every
// vertex, and its l2 norm over the vertex set.
struct DescendantProfile {
  double b = 0.0;
  std::vector<double> delta;
  double big_delta = 0.0;
};

// Single post-order pass of delta(v) = 1 + b * sum_{children w} delta(w).
DescendantProfile ComputeDescendantProfile(const RootedTree& t, double b);

// delta of the truncation T_k, obtained as sum_j (bQ)^j 1_{V_k} with Q the
// child-sum operator of t. Returned over all of t's vertices; entries
// outside B_k(root) are zero.
std::vector<double> DeltaViaOperator(const RootedTree& t, double b, int k);

// sum over ordered pairs (w1, w2) in V^2 of b^{d(w1, w2)}, diagonal included.
// The naive version runs one BFS per source vertex in O(n^2); it is the
// oracle for the meet-based version, which groups pairs by their meet.
double PairDistanceSumNaive(const RootedTree& t, double b);
double PairDistanceSum(const RootedTree& t, double b);

// S <= Delta^2 <= S / (1 - b^2) with S the pair distance sum.
struct SandwichBounds {
  double lower = 0.0;
  double upper = 0.0;
  double delta_sq = 0.0;
};
SandwichBounds ComputeSandwichBounds(const RootedTree& t, double b);

// sqrt(n) / (1 - b d) with d the largest child count, when b d < 1.
// std::nullopt when the hypothesis b d < 1 fails.
std::optional<double> AltDeltaBound(const RootedTree& t, double b);

// Delta_k of the truncations T_k for k = 0..k_max.
struct DeltaSeries {
  double b = 0.0;
  std::vector<int> ks;
  std::vector<std::int64_t> vertex_counts;  // |V_k|
  std::vector<double> deltas;               // Delta_k
  std::vector<double> ratios;               // Delta_k^2 / |V_k|
};
DeltaSeries ComputeDeltaSeries(const RootedTree& t, double b, int k_max);

// (1/|V_k|) * PairDistanceSum(T_k, b) for k = 0..k_max.
std::vector<double> PairSumRatioSeries(const RootedTree& t, double b, int k_max);

// Level-by-level description of a tree numbered in level order whose
// sibling blocks are contiguous: child_counts[j][i] is the number of
// children of the i-th vertex of level j, and those children are the next
// block of level j + 1. Memory is one integer per vertex, with no parent
// or depth arrays.
class LevelProfile {
 public:
  explicit LevelProfile(std::vector<std::vector<std::uint32_t>> child_counts);

  // Requires t.level_ordered() and contiguous sibling blocks (true for all
  // generated and truncated trees).
  static LevelProfile FromTree(const RootedTree& t);
  static LevelProfile ThreeOne(int depth);

  int height() const { return static_cast<int>(child_counts_.size()) - 1; }
  std::int64_t level_size(int j) const {
    return static_cast<std::int64_t>(child_counts_[j].size());
  }
  std::span<const std::uint32_t> level(int j) const { return child_counts_[j]; }

 private:
  std::vector<std::vector<std::uint32_t>> child_counts_;
};

// Delta_k series from a level profile; O(|V_k|) work per k.
DeltaSeries ComputeDeltaSeries(const LevelProfile& levels, double b, int k_max);

// Delta_k series of a spherically symmetric tree in which every vertex of
// level j has branching[j] children. delta is constant on levels, so the
// cost is O(k_max^2) regardless of the vertex count.
DeltaSeries ComputeSymmetricDeltaSeries(std::span<const std::int64_t> branching,
                                        double b, int k_max);

}  // namespace treeconc

#endif  // TREECONC_DELTA_H_

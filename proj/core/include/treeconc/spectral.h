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

#ifndef TREECONC_SPECTRAL_H_
#define TREECONC_SPECTRAL_H_

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "treeconc/tree.h"

namespace treeconc {

// Q is the child-sum operator on R^V, (Qf)(v) = sum_{parent(w) = v} f(w).
// Its adjoint is (Q* g)(w) = g(parent(w)) for w != root and 0 at the root.
// Neither is ever materialized.
std::vector<double> ApplyQ(const RootedTree& t, std::span<const double> f,
                           int power = 1);
std::vector<double> ApplyQAdjoint(const RootedTree& t, std::span<const double> g,
                                  int power = 1);

struct PowerIterationOptions {
  int max_iterations = 10000;
  // Stop once successive Rayleigh quotients differ by less than
  // tolerance * max(1, quotient).
  double tolerance = 1e-12;
  std::uint64_t seed = 0x5eed;
};

// Largest singular value of a linear map given matrix-free, by power
// iteration on A^T A from a positive random start vector.
using LinearMap = std::function<void(std::span<const double>, std::span<double>)>;
double TopSingularValue(std::size_t dim, const LinearMap& apply,
                        const LinearMap& apply_transpose,
                        const PowerIterationOptions& options = {});

// ||Q^j||_2 = sqrt(max_v |D_j(v)|).
double QPowerNormExact(const RootedTree& t, int j);
// Power iteration on (Q^j)(Q^j)*.
double QPowerNormIterative(const RootedTree& t, int j,
                           const PowerIterationOptions& options = {});

// ||sum_{j=0}^k (bQ)^j||_2.
double PartialSumNorm(const RootedTree& t, double b, int k,
                      const PowerIterationOptions& options = {});
// ||sum_{j=0}^k (bQ)^j 1_{V_k}||_2 / sqrt(|V_k|), the quantity the operator
// norm above bounds.
double PartialSumOnBall(const RootedTree& t, double b, int k);

// Dense upper-triangular matrix sum_r b^r Q^r written in a breadth-first
// vertex order: entry (i, j) is b^{d(v_i, v_j)} when v_i is an ancestor of
// (or equal to) v_j and 0 otherwise.
class MixingMatrix {
 public:
  static constexpr VertexId kMaxVertices = 4096;

  MixingMatrix(const RootedTree& t, double b);
  // `order` must list every vertex once, start at the root and have
  // nondecreasing depths.
  MixingMatrix(const RootedTree& t, double b, std::span<const VertexId> order);

  std::size_t size() const { return n_; }
  double b() const { return b_; }
  std::span<const VertexId> order() const { return order_; }
  double operator()(std::size_t i, std::size_t j) const {
    return entries_[i * n_ + j];
  }
  std::span<const double> entries() const { return entries_; }

 private:
  std::size_t n_;
  double b_;
  std::vector<VertexId> order_;
  std::vector<double> entries_;
};

// A uniformly random admissible breadth-first order: the root first, then
// each level in a shuffled order.
std::vector<VertexId> RandomBreadthFirstOrder(const RootedTree& t,
                                              std::uint64_t seed);

struct MixingNorms {
  double inf_norm = 0.0;             // max row sum
  double two_norm = 0.0;             // largest singular value
  std::vector<double> row_sums;      // matrix times the all-ones vector
};
MixingNorms ComputeMixingNorms(const MixingMatrix& m,
                               const PowerIterationOptions& options = {});

}  // namespace treeconc

#endif  // TREECONC_SPECTRAL_H_

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

#include "treeconc/spectral.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <stdexcept>
#include <string>

#include "treeconc/delta.h"

namespace treeconc {
namespace {

void CheckLength(const RootedTree& t, std::size_t size, const char* what) {
  if (size != static_cast<std::size_t>(t.size())) {
    throw std::invalid_argument(std::string(what) + ": vector length " +
                                std::to_string(size) + " != vertex count " +
                                std::to_string(t.size()));
  }
}

void CheckPower(int power, const char* what) {
  if (power < 0) throw std::invalid_argument(std::string(what) + ": negative power");
}

double Norm(std::span<const double> x) {
  double s = 0.0;
  for (double v : x) s += v * v;
  return std::sqrt(s);
}

// One child-sum step, in place through a scratch buffer.
void ChildSum(const RootedTree& t, std::vector<double>& f, std::vector<double>& scratch) {
  std::fill(scratch.begin(), scratch.end(), 0.0);
  for (VertexId w = 1; w < t.size(); ++w) scratch[t.parent(w)] += f[w];
  f.swap(scratch);
}

void ParentPull(const RootedTree& t, std::vector<double>& g, std::vector<double>& scratch) {
  scratch[0] = 0.0;
  for (VertexId w = 1; w < t.size(); ++w) scratch[w] = g[t.parent(w)];
  g.swap(scratch);
}

}  // namespace

std::vector<double> ApplyQ(const RootedTree& t, std::span<const double> f, int power) {
  CheckLength(t, f.size(), "ApplyQ");
  CheckPower(power, "ApplyQ");
  std::vector<double> out(f.begin(), f.end()), scratch(f.size());
  for (int j = 0; j < power; ++j) ChildSum(t, out, scratch);
  return out;
}

std::vector<double> ApplyQAdjoint(const RootedTree& t, std::span<const double> g,
                                  int power) {
  CheckLength(t, g.size(), "ApplyQAdjoint");
  CheckPower(power, "ApplyQAdjoint");
  std::vector<double> out(g.begin(), g.end()), scratch(g.size());
  for (int j = 0; j < power; ++j) ParentPull(t, out, scratch);
  return out;
}

double TopSingularValue(std::size_t dim, const LinearMap& apply,
                        const LinearMap& apply_transpose,
                        const PowerIterationOptions& options) {
  if (options.max_iterations < 1) {
    throw std::invalid_argument("power iteration needs at least one iteration");
  }
  if (dim == 0) return 0.0;
  std::mt19937_64 rng(options.seed);
  std::uniform_real_distribution<double> unit(0.5, 1.5);
  std::vector<double> x(dim), y(dim), z(dim);

  auto randomize = [&] {
    for (double& v : x) v = unit(rng);
    const double nx = Norm(x);
    for (double& v : x) v /= nx;
  };
  randomize();
  double previous = -1.0;
  double quotient = 0.0;
  for (int it = 0; it < options.max_iterations; ++it) {
    apply(x, y);
    // x has unit norm, so ||Ax||^2 is the Rayleigh quotient of A^T A.
    quotient = 0.0;
    for (double v : y) quotient += v * v;
    apply_transpose(y, z);
    const double nz = Norm(z);
    if (nz == 0.0) {
      // Start vector in the kernel; retry once before reporting zero.
      if (it == 0) {
        randomize();
        continue;
      }
      return 0.0;
    }
    for (std::size_t i = 0; i < dim; ++i) x[i] = z[i] / nz;
    if (previous >= 0.0 &&
        std::abs(quotient - previous) < options.tolerance * std::max(1.0, quotient)) {
      break;
    }
    previous = quotient;
  }
  return std::sqrt(quotient);
}

double QPowerNormExact(const RootedTree& t, int j) {
  CheckPower(j, "QPowerNormExact");
  const auto counts = DescendantCounts(t, j);
  const std::int64_t best = *std::max_element(counts.begin(), counts.end());
  return std::sqrt(static_cast<double>(best));
}

double QPowerNormIterative(const RootedTree& t, int j,
                           const PowerIterationOptions& options) {
  CheckPower(j, "QPowerNormIterative");
  if (j == 0) return 1.0;
  std::vector<double> scratch(t.size()), buffer(t.size());
  // The power method runs on A A^T = Q^j (Q^j)*, so "apply" is (Q*)^j.
  auto adjoint = [&](std::span<const double> in, std::span<double> out) {
    buffer.assign(in.begin(), in.end());
    for (int s = 0; s < j; ++s) ParentPull(t, buffer, scratch);
    std::copy(buffer.begin(), buffer.end(), out.begin());
  };
  auto forward = [&](std::span<const double> in, std::span<double> out) {
    buffer.assign(in.begin(), in.end());
    for (int s = 0; s < j; ++s) ChildSum(t, buffer, scratch);
    std::copy(buffer.begin(), buffer.end(), out.begin());
  };
  return TopSingularValue(static_cast<std::size_t>(t.size()), adjoint, forward,
                          options);
}

double PartialSumNorm(const RootedTree& t, double b, int k,
                      const PowerIterationOptions& options) {
  ValidateContraction(b);
  if (k < 0) throw std::invalid_argument("PartialSumNorm: negative k");
  std::vector<double> term(t.size()), scratch(t.size());
  auto partial_sum = [&](bool adjoint, std::span<const double> in,
                         std::span<double> out) {
    term.assign(in.begin(), in.end());
    std::copy(in.begin(), in.end(), out.begin());
    for (int j = 1; j <= k; ++j) {
      if (adjoint) {
        ParentPull(t, term, scratch);
      } else {
        ChildSum(t, term, scratch);
      }
      double nonzero = 0.0;
      for (std::size_t i = 0; i < term.size(); ++i) {
        term[i] *= b;
        out[i] += term[i];
        nonzero += std::abs(term[i]);
      }
      if (nonzero == 0.0) break;
    }
  };
  return TopSingularValue(
      static_cast<std::size_t>(t.size()),
      [&](std::span<const double> in, std::span<double> out) {
        partial_sum(false, in, out);
      },
      [&](std::span<const double> in, std::span<double> out) {
        partial_sum(true, in, out);
      },
      options);
}

double PartialSumOnBall(const RootedTree& t, double b, int k) {
  const auto delta = DeltaViaOperator(t, b, std::min(k, t.height()));
  std::int64_t ball = 0;
  for (VertexId v = 0; v < t.size(); ++v) ball += t.depth(v) <= k ? 1 : 0;
  return Norm(delta) / std::sqrt(static_cast<double>(ball));
}

namespace {

void ValidateBreadthFirst(const RootedTree& t, std::span<const VertexId> order) {
  if (order.size() != static_cast<std::size_t>(t.size())) {
    throw std::invalid_argument("breadth-first order has wrong length");
  }
  std::vector<bool> seen(t.size(), false);
  for (std::size_t i = 0; i < order.size(); ++i) {
    const VertexId v = t.Check(order[i]);
    if (seen[v]) {
      throw std::invalid_argument("breadth-first order repeats vertex " +
                                  std::to_string(v));
    }
    seen[v] = true;
    if (i > 0 && t.depth(order[i]) < t.depth(order[i - 1])) {
      throw std::invalid_argument(
          "order is not breadth-first at position " + std::to_string(i));
    }
  }
  if (order[0] != t.root()) {
    throw std::invalid_argument("breadth-first order must start at the root");
  }
}

}  // namespace

MixingMatrix::MixingMatrix(const RootedTree& t, double b)
    : MixingMatrix(t, b, BreadthFirstOrder(t)) {}

MixingMatrix::MixingMatrix(const RootedTree& t, double b,
                           std::span<const VertexId> order)
    : n_(static_cast<std::size_t>(t.size())), b_(b), order_(order.begin(), order.end()) {
  ValidateContraction(b);
  if (t.size() > kMaxVertices) {
    throw std::length_error("MixingMatrix: " + std::to_string(t.size()) +
                            " vertices exceeds the dense limit of " +
                            std::to_string(kMaxVertices));
  }
  ValidateBreadthFirst(t, order_);
  std::vector<std::size_t> position(n_);
  for (std::size_t i = 0; i < n_; ++i) position[order_[i]] = i;
  entries_.assign(n_ * n_, 0.0);
  // Walk each vertex up to the root; every ancestor a at distance r gets
  // entry (a, v) = b^r.
  for (VertexId v = 0; v < t.size(); ++v) {
    double weight = 1.0;
    VertexId a = v;
    while (true) {
      entries_[position[a] * n_ + position[v]] = weight;
      if (a == t.root()) break;
      a = t.parent(a);
      weight *= b;
    }
  }
}

std::vector<VertexId> RandomBreadthFirstOrder(const RootedTree& t, std::uint64_t seed) {
  std::vector<VertexId> order = BreadthFirstOrder(t);
  std::mt19937_64 rng(seed);
  std::size_t begin = 0;
  for (std::int64_t size : t.level_sizes()) {
    std::shuffle(order.begin() + begin, order.begin() + begin + size, rng);
    begin += static_cast<std::size_t>(size);
  }
  return order;
}

MixingNorms ComputeMixingNorms(const MixingMatrix& m,
                               const PowerIterationOptions& options) {
  const std::size_t n = m.size();
  const auto a = m.entries();
  MixingNorms norms;
  norms.row_sums.assign(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    double s = 0.0;
    for (std::size_t j = i; j < n; ++j) s += a[i * n + j];
    norms.row_sums[i] = s;
    norms.inf_norm = std::max(norms.inf_norm, s);
  }
  norms.two_norm = TopSingularValue(
      n,
      [&](std::span<const double> x, std::span<double> y) {
        for (std::size_t i = 0; i < n; ++i) {
          double s = 0.0;
          for (std::size_t j = i; j < n; ++j) s += a[i * n + j] * x[j];
          y[i] = s;
        }
      },
      [&](std::span<const double> x, std::span<double> y) {
        std::fill(y.begin(), y.end(), 0.0);
        for (std::size_t i = 0; i < n; ++i) {
          const double xi = x[i];
          if (xi == 0.0) continue;
          for (std::size_t j = i; j < n; ++j) y[j] += a[i * n + j] * xi;
        }
      },
      options);
  return norms;
}

}  // namespace treeconc

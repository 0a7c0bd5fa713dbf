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

#include "treeconc/delta.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace treeconc {

void ValidateContraction(double b) {
  if (!(b >= 0.0 && b < 1.0)) {
    throw std::invalid_argument("contraction b = " + std::to_string(b) +
                                " outside [0, 1)");
  }
}

namespace {

void ValidateDepth(const RootedTree& t, int k, const char* what) {
  if (k < 0 || k > t.height()) {
    throw std::invalid_argument(std::string(what) + ": depth " +
                                std::to_string(k) + " outside [0, " +
                                std::to_string(t.height()) + "]");
  }
}

}  // namespace

DescendantProfile ComputeDescendantProfile(const RootedTree& t, double b) {
  ValidateContraction(b);
  DescendantProfile profile;
  profile.b = b;
  profile.delta.assign(t.size(), 1.0);
  // Children always carry larger ids, so a reverse sweep is a post-order.
  for (VertexId v = t.size() - 1; v >= 0; --v) {
    double sum = 0.0;
    for (VertexId w : t.children(v)) sum += profile.delta[w];
    profile.delta[v] = 1.0 + b * sum;
  }
  double sq = 0.0;
  for (double d : profile.delta) sq += d * d;
  profile.big_delta = std::sqrt(sq);
  return profile;
}

std::vector<double> DeltaViaOperator(const RootedTree& t, double b, int k) {
  ValidateContraction(b);
  ValidateDepth(t, k, "DeltaViaOperator");
  const VertexId n = t.size();
  std::vector<double> term(n), next(n), acc(n);
  for (VertexId v = 0; v < n; ++v) term[v] = t.depth(v) <= k ? 1.0 : 0.0;
  acc = term;
  for (int j = 1; j <= k; ++j) {
    std::fill(next.begin(), next.end(), 0.0);
    for (VertexId w = 1; w < n; ++w) next[t.parent(w)] += term[w];
    for (VertexId v = 0; v < n; ++v) {
      term[v] = b * next[v];
      acc[v] += term[v];
    }
  }
  return acc;
}

double PairDistanceSumNaive(const RootedTree& t, double b) {
  ValidateContraction(b);
  const VertexId n = t.size();
  std::vector<double> powers(static_cast<std::size_t>(2 * t.height()) + 1);
  powers[0] = 1.0;
  for (std::size_t i = 1; i < powers.size(); ++i) powers[i] = powers[i - 1] * b;

  std::vector<int> dist(n);
  std::vector<VertexId> queue(n);
  double total = 0.0;
  for (VertexId source = 0; source < n; ++source) {
    std::fill(dist.begin(), dist.end(), -1);
    std::size_t head = 0, tail = 0;
    queue[tail++] = source;
    dist[source] = 0;
    while (head < tail) {
      const VertexId u = queue[head++];
      auto visit = [&](VertexId x) {
        if (dist[x] < 0) {
          dist[x] = dist[u] + 1;
          queue[tail++] = x;
        }
      };
      if (u != 0) visit(t.parent(u));
      for (VertexId c : t.children(u)) visit(c);
    }
    double row = 0.0;
    for (VertexId w = 0; w < n; ++w) row += powers[dist[w]];
    total += row;
  }
  return total;
}

double PairDistanceSum(const RootedTree& t, double b) {
  ValidateContraction(b);
  // profile[a] = sum_r |D_r(a)| b^r evaluates the depth profile of the
  // subtree at a. Ordered pairs whose meet is a are (a, a), (a, w) and
  // (w, a) for strict descendants w, and pairs drawn from two distinct child
  // subtrees; their generating sums are products of child profiles:
  //   1 + 2 b sum_c P_c + 2 b^2 sum_{c < c'} P_c P_c'.
  const VertexId n = t.size();
  std::vector<double> profile(n, 1.0);
  std::vector<double> by_meet(n, 0.0);
  for (VertexId a = n - 1; a >= 0; --a) {
    double sum = 0.0, cross = 0.0;
    for (VertexId c : t.children(a)) {
      cross += profile[c] * sum;
      sum += profile[c];
    }
    profile[a] = 1.0 + b * sum;
    by_meet[a] = 1.0 + 2.0 * b * sum + 2.0 * b * b * cross;
  }
  double total = 0.0;
  for (VertexId a = 0; a < n; ++a) total += by_meet[a];
  return total;
}

SandwichBounds ComputeSandwichBounds(const RootedTree& t, double b) {
  const DescendantProfile profile = ComputeDescendantProfile(t, b);
  SandwichBounds bounds;
  bounds.lower = PairDistanceSum(t, b);
  bounds.upper = bounds.lower / (1.0 - b * b);
  bounds.delta_sq = profile.big_delta * profile.big_delta;
  return bounds;
}

std::optional<double> AltDeltaBound(const RootedTree& t, double b) {
  ValidateContraction(b);
  const double bd = b * static_cast<double>(t.max_children());
  if (!(bd < 1.0)) return std::nullopt;
  return std::sqrt(static_cast<double>(t.size())) / (1.0 - bd);
}

DeltaSeries ComputeDeltaSeries(const RootedTree& t, double b, int k_max) {
  ValidateContraction(b);
  ValidateDepth(t, k_max, "ComputeDeltaSeries");
  const std::vector<VertexId> order = BreadthFirstOrder(t);
  const auto levels = t.level_sizes();
  std::vector<double> acc(t.size(), 0.0);
  DeltaSeries series;
  series.b = b;
  std::int64_t prefix = 0;
  for (int k = 0; k <= k_max; ++k) {
    prefix += levels[k];
    for (std::int64_t i = 0; i < prefix; ++i) acc[order[i]] = 0.0;
    long double sq = 0.0L;
    for (std::int64_t i = prefix - 1; i >= 0; --i) {
      const VertexId v = order[i];
      const double d = 1.0 + b * acc[v];
      sq += static_cast<long double>(d) * d;
      if (v != 0) acc[t.parent(v)] += d;
    }
    series.ks.push_back(k);
    series.vertex_counts.push_back(prefix);
    series.deltas.push_back(std::sqrt(static_cast<double>(sq)));
    series.ratios.push_back(static_cast<double>(sq / prefix));
  }
  return series;
}

std::vector<double> PairSumRatioSeries(const RootedTree& t, double b, int k_max) {
  ValidateContraction(b);
  ValidateDepth(t, k_max, "PairSumRatioSeries");
  std::vector<double> out;
  for (int k = 0; k <= k_max; ++k) {
    const RootedTree tk = TruncateToDepth(t, k);
    out.push_back(PairDistanceSum(tk, b) / tk.size());
  }
  return out;
}

LevelProfile::LevelProfile(std::vector<std::vector<std::uint32_t>> child_counts)
    : child_counts_(std::move(child_counts)) {
  if (child_counts_.empty() || child_counts_[0].size() != 1) {
    throw std::invalid_argument("LevelProfile: level 0 must hold exactly the root");
  }
  for (std::size_t j = 0; j + 1 < child_counts_.size(); ++j) {
    std::uint64_t total = 0;
    for (std::uint32_t c : child_counts_[j]) total += c;
    if (total != child_counts_[j + 1].size()) {
      throw std::invalid_argument("LevelProfile: level " + std::to_string(j) +
                                  " child counts do not match level " +
                                  std::to_string(j + 1) + " size");
    }
  }
  for (std::uint32_t c : child_counts_.back()) {
    if (c != 0) {
      throw std::invalid_argument("LevelProfile: last level must be leaves");
    }
  }
}

LevelProfile LevelProfile::FromTree(const RootedTree& t) {
  if (!t.level_ordered()) {
    throw std::invalid_argument("LevelProfile: tree is not in level order");
  }
  std::vector<std::vector<std::uint32_t>> counts(t.height() + 1);
  VertexId expected_child = 1;
  for (VertexId v = 0; v < t.size(); ++v) {
    const auto kids = t.children(v);
    for (VertexId c : kids) {
      if (c != expected_child++) {
        throw std::invalid_argument(
            "LevelProfile: sibling blocks are not contiguous at vertex " +
            std::to_string(v));
      }
    }
    counts[t.depth(v)].push_back(static_cast<std::uint32_t>(kids.size()));
  }
  return LevelProfile(std::move(counts));
}

LevelProfile LevelProfile::ThreeOne(int depth) {
  if (depth < 0 || depth > 30) {
    throw std::invalid_argument("LevelProfile::ThreeOne: depth outside [0, 30]");
  }
  std::vector<std::vector<std::uint32_t>> counts(depth + 1);
  counts[0].assign(1, depth >= 1 ? 2 : 0);
  for (int j = 1; j <= depth; ++j) {
    const std::size_t half = std::size_t{1} << (j - 1);
    counts[j].assign(2 * half, j < depth ? 1 : 0);
    if (j < depth) std::fill(counts[j].begin(), counts[j].begin() + half, 3);
  }
  return LevelProfile(std::move(counts));
}

DeltaSeries ComputeDeltaSeries(const LevelProfile& levels, double b, int k_max) {
  ValidateContraction(b);
  if (k_max < 0 || k_max > levels.height()) {
    throw std::invalid_argument("ComputeDeltaSeries: k_max outside [0, " +
                                std::to_string(levels.height()) + "]");
  }
  std::int64_t widest = 1;
  for (int j = 0; j <= k_max; ++j) widest = std::max(widest, levels.level_size(j));
  std::vector<double> below(widest), current(widest);

  DeltaSeries series;
  series.b = b;
  std::int64_t count = 0;
  for (int k = 0; k <= k_max; ++k) {
    count += levels.level_size(k);
    std::int64_t width = levels.level_size(k);
    std::fill(below.begin(), below.begin() + width, 1.0);
    long double sq = static_cast<long double>(width);
    for (int j = k - 1; j >= 0; --j) {
      const auto kids = levels.level(j);
      std::int64_t child = 0;
      long double level_sq = 0.0L;
      for (std::size_t i = 0; i < kids.size(); ++i) {
        double sum = 0.0;
        for (std::uint32_t c = 0; c < kids[i]; ++c) sum += below[child++];
        const double d = 1.0 + b * sum;
        current[i] = d;
        level_sq += static_cast<long double>(d) * d;
      }
      sq += level_sq;
      width = static_cast<std::int64_t>(kids.size());
      std::swap(below, current);
    }
    series.ks.push_back(k);
    series.vertex_counts.push_back(count);
    series.deltas.push_back(std::sqrt(static_cast<double>(sq)));
    series.ratios.push_back(static_cast<double>(sq / count));
  }
  return series;
}

DeltaSeries ComputeSymmetricDeltaSeries(std::span<const std::int64_t> branching,
                                        double b, int k_max) {
  ValidateContraction(b);
  if (k_max < 0 || static_cast<std::size_t>(k_max) > branching.size()) {
    throw std::invalid_argument(
        "ComputeSymmetricDeltaSeries: need branching numbers for levels "
        "0..k_max-1");
  }
  std::vector<std::int64_t> level_size(k_max + 1, 1);
  for (int j = 0; j < k_max; ++j) {
    if (branching[j] < 0) {
      throw std::invalid_argument("ComputeSymmetricDeltaSeries: negative branching");
    }
    if (branching[j] > 0 &&
        level_size[j] > std::numeric_limits<std::int64_t>::max() / 4 / branching[j]) {
      throw std::length_error("ComputeSymmetricDeltaSeries: level size overflow");
    }
    level_size[j + 1] = level_size[j] * branching[j];
  }
  DeltaSeries series;
  series.b = b;
  std::int64_t count = 0;
  std::vector<double> delta(k_max + 1);
  for (int k = 0; k <= k_max; ++k) {
    count += level_size[k];
    delta[k] = 1.0;
    long double sq = static_cast<long double>(level_size[k]);
    for (int j = k - 1; j >= 0; --j) {
      delta[j] = 1.0 + b * static_cast<double>(branching[j]) * delta[j + 1];
      sq += static_cast<long double>(level_size[j]) * delta[j] * delta[j];
    }
    series.ks.push_back(k);
    series.vertex_counts.push_back(count);
    series.deltas.push_back(std::sqrt(static_cast<double>(sq)));
    series.ratios.push_back(static_cast<double>(sq / count));
  }
  return series;
}

}  // namespace treeconc

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

#include "treeconc/tree.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <stdexcept>

namespace treeconc {
namespace {

std::string IndexMessage(std::string_view what, std::size_t index) {
  return std::string(what) + " at index " + std::to_string(index);
}

// Level-order tree from per-vertex child counts listed in level order.
RootedTree FromLevelChildCounts(const std::vector<std::int64_t>& child_counts) {
  std::vector<VertexId> parents(1, kNoParent);
  for (std::size_t v = 0; v < child_counts.size(); ++v) {
    for (std::int64_t c = 0; c < child_counts[v]; ++c) {
      parents.push_back(static_cast<VertexId>(v));
    }
  }
  return RootedTree::FromParents(parents);
}

}  // namespace

RootedTree::RootedTree()
    : parent_{kNoParent},
      child_begin_{0, 0},
      depth_{0},
      level_sizes_{1} {}

VertexId RootedTree::Check(VertexId v) const {
  if (v < 0 || v >= size()) {
    throw std::out_of_range("vertex id " + std::to_string(v) +
                            " outside [0, " + std::to_string(size()) + ")");
  }
  return v;
}

RootedTree RootedTree::FromParents(std::span<const VertexId> parents) {
  if (parents.empty()) {
    throw std::invalid_argument("parent array is empty");
  }
  if (parents.size() >
      static_cast<std::size_t>(std::numeric_limits<VertexId>::max())) {
    throw std::length_error("parent array too long for VertexId");
  }
  if (parents[0] != kNoParent) {
    throw std::invalid_argument(
        IndexMessage("root sentinel -1 expected", 0) + ", found " +
        std::to_string(parents[0]));
  }
  const std::size_t n = parents.size();
  for (std::size_t i = 1; i < n; ++i) {
    const VertexId p = parents[i];
    if (p == kNoParent) {
      throw std::invalid_argument(
          IndexMessage("second root sentinel (forest)", i));
    }
    if (p < 0) {
      throw std::invalid_argument(IndexMessage("negative parent", i));
    }
    if (static_cast<std::size_t>(p) >= i) {
      throw std::invalid_argument(
          IndexMessage("parent must precede child (forward or cyclic "
                       "reference)",
                       i) +
          ", parent " + std::to_string(p));
    }
  }

  RootedTree t;
  t.parent_.assign(parents.begin(), parents.end());
  t.child_begin_.assign(n + 1, 0);
  for (std::size_t i = 1; i < n; ++i) ++t.child_begin_[parents[i] + 1];
  for (std::size_t v = 0; v < n; ++v) {
    t.max_children_ = std::max(t.max_children_, t.child_begin_[v + 1]);
    t.child_begin_[v + 1] += t.child_begin_[v];
  }
  t.children_.resize(n - 1);
  std::vector<VertexId> cursor(t.child_begin_.begin(), t.child_begin_.end() - 1);
  for (std::size_t i = 1; i < n; ++i) {
    t.children_[cursor[parents[i]]++] = static_cast<VertexId>(i);
  }

  t.depth_.assign(n, 0);
  t.height_ = 0;
  t.level_ordered_ = true;
  for (std::size_t i = 1; i < n; ++i) {
    t.depth_[i] = t.depth_[parents[i]] + 1;
    t.height_ = std::max(t.height_, t.depth_[i]);
    if (t.depth_[i] < t.depth_[i - 1]) t.level_ordered_ = false;
  }
  t.level_sizes_.assign(static_cast<std::size_t>(t.height_) + 1, 0);
  for (std::size_t i = 0; i < n; ++i) ++t.level_sizes_[t.depth_[i]];
  return t;
}

std::int64_t GeneratedVertexCount(const GeneratorSpec& spec) {
  constexpr std::int64_t kCap = std::numeric_limits<std::int64_t>::max() / 8;
  return std::visit(
      [&](const auto& s) -> std::int64_t {
        using S = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<S, DaryTreeSpec>) {
          std::int64_t total = 0, level = 1;
          for (int j = 0; j <= s.depth; ++j) {
            total += level;
            if (total > kCap) return kCap;
            if (j < s.depth) {
              if (level > kCap / std::max(1, s.arity)) return kCap;
              level *= s.arity;
            }
          }
          return total;
        } else if constexpr (std::is_same_v<S, ThreeOneTreeSpec>) {
          if (s.depth >= 60) return kCap;
          return (std::int64_t{1} << (s.depth + 1)) - 1;
        } else if constexpr (std::is_same_v<S, PathTreeSpec>) {
          return std::int64_t{s.length} + 1;
        } else {
          return -1;  // random; known only after generation
        }
      },
      spec);
}

RootedTree Generate(const GeneratorSpec& spec) {
  const std::int64_t count = GeneratedVertexCount(spec);
  if (count > kMaxGeneratedVertices) {
    throw std::length_error("generator would produce " +
                            std::to_string(count) +
                            " vertices, above the limit of " +
                            std::to_string(kMaxGeneratedVertices));
  }
  return std::visit(
      [&](const auto& s) -> RootedTree {
        using S = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<S, DaryTreeSpec>) {
          if (s.arity < 1) throw std::invalid_argument("dary: arity must be >= 1");
          if (s.depth < 0) throw std::invalid_argument("dary: depth must be >= 0");
          std::vector<VertexId> parents(static_cast<std::size_t>(count));
          parents[0] = kNoParent;
          for (std::int64_t i = 1; i < count; ++i) {
            parents[i] = static_cast<VertexId>((i - 1) / s.arity);
          }
          return RootedTree::FromParents(parents);
        } else if constexpr (std::is_same_v<S, ThreeOneTreeSpec>) {
          if (s.depth < 0) {
            throw std::invalid_argument("threeone: depth must be >= 0");
          }
          // Level j >= 1 has 2^j vertices; the first 2^{j-1} get three
          // children and the remaining 2^{j-1} get one, in level order.
          std::vector<std::int64_t> child_counts(static_cast<std::size_t>(count), 0);
          if (s.depth >= 1) child_counts[0] = 2;
          for (int j = 1; j < s.depth; ++j) {
            const std::int64_t begin = (std::int64_t{1} << j) - 1;
            const std::int64_t half = std::int64_t{1} << (j - 1);
            for (std::int64_t i = 0; i < 2 * half; ++i) {
              child_counts[begin + i] = i < half ? 3 : 1;
            }
          }
          return FromLevelChildCounts(child_counts);
        } else if constexpr (std::is_same_v<S, PathTreeSpec>) {
          if (s.length < 0) throw std::invalid_argument("path: length must be >= 0");
          std::vector<VertexId> parents(static_cast<std::size_t>(count));
          parents[0] = kNoParent;
          for (std::int64_t i = 1; i < count; ++i) parents[i] = static_cast<VertexId>(i - 1);
          return RootedTree::FromParents(parents);
        } else {
          if (s.depth < 0) throw std::invalid_argument("gw: depth must be >= 0");
          if (s.offspring.empty()) {
            throw std::invalid_argument("gw: offspring distribution is empty");
          }
          double total = 0.0;
          for (std::size_t k = 0; k < s.offspring.size(); ++k) {
            if (!(s.offspring[k] >= 0.0)) {
              throw std::invalid_argument("gw: negative offspring probability at index " +
                                          std::to_string(k));
            }
            total += s.offspring[k];
          }
          if (std::abs(total - 1.0) > 1e-12) {
            throw std::invalid_argument("gw: offspring probabilities sum to " +
                                        std::to_string(total) + ", expected 1");
          }
          std::mt19937_64 rng(s.seed);
          std::discrete_distribution<int> offspring(s.offspring.begin(),
                                                    s.offspring.end());
          std::vector<VertexId> parents{kNoParent};
          std::int64_t level_begin = 0, level_end = 1;
          for (int j = 0; j < s.depth && level_begin < level_end; ++j) {
            for (std::int64_t v = level_begin; v < level_end; ++v) {
              const int c = offspring(rng);
              for (int i = 0; i < c; ++i) {
                if (static_cast<std::int64_t>(parents.size()) >= kMaxGeneratedVertices) {
                  throw std::length_error("gw: tree exceeds the vertex limit");
                }
                parents.push_back(static_cast<VertexId>(v));
              }
            }
            level_begin = level_end;
            level_end = static_cast<std::int64_t>(parents.size());
          }
          return RootedTree::FromParents(parents);
        }
      },
      spec);
}

namespace {

std::vector<std::string_view> Split(std::string_view text, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = text.find(sep, start);
    out.push_back(text.substr(start, pos == std::string_view::npos
                                         ? std::string_view::npos
                                         : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

template <typename T>
T ParseNumber(std::string_view field, std::string_view what) {
  T value{};
  const auto [ptr, ec] =
      std::from_chars(field.data(), field.data() + field.size(), value);
  if (ec != std::errc() || ptr != field.data() + field.size()) {
    throw std::invalid_argument("generator spec: bad " + std::string(what) +
                                " '" + std::string(field) + "'");
  }
  return value;
}

}  // namespace

GeneratorSpec ParseGeneratorSpec(std::string_view text) {
  const auto fields = Split(text, ':');
  const std::string_view kind = fields[0];
  auto expect = [&](std::size_t n) {
    if (fields.size() != n) {
      throw std::invalid_argument("generator spec '" + std::string(text) +
                                  "': expected " + std::to_string(n - 1) +
                                  " parameter(s) for " + std::string(kind));
    }
  };
  if (kind == "dary") {
    expect(3);
    return DaryTreeSpec{ParseNumber<int>(fields[1], "arity"),
                        ParseNumber<int>(fields[2], "depth")};
  }
  if (kind == "threeone") {
    expect(2);
    return ThreeOneTreeSpec{ParseNumber<int>(fields[1], "depth")};
  }
  if (kind == "path") {
    expect(2);
    return PathTreeSpec{ParseNumber<int>(fields[1], "length")};
  }
  if (kind == "gw") {
    expect(4);
    GaltonWatsonSpec spec;
    for (std::string_view p : Split(fields[1], ',')) {
      spec.offspring.push_back(ParseNumber<double>(p, "offspring probability"));
    }
    spec.depth = ParseNumber<int>(fields[2], "depth");
    spec.seed = ParseNumber<std::uint64_t>(fields[3], "seed");
    return spec;
  }
  throw std::invalid_argument("generator spec: unknown kind '" +
                              std::string(kind) + "'");
}

std::string ToString(const GeneratorSpec& spec) {
  return std::visit(
      [](const auto& s) -> std::string {
        using S = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<S, DaryTreeSpec>) {
          return "dary:" + std::to_string(s.arity) + ":" + std::to_string(s.depth);
        } else if constexpr (std::is_same_v<S, ThreeOneTreeSpec>) {
          return "threeone:" + std::to_string(s.depth);
        } else if constexpr (std::is_same_v<S, PathTreeSpec>) {
          return "path:" + std::to_string(s.length);
        } else {
          std::string out = "gw:";
          for (std::size_t i = 0; i < s.offspring.size(); ++i) {
            char buf[32];
            auto r = std::to_chars(buf, buf + sizeof buf, s.offspring[i]);
            if (i > 0) out += ',';
            out.append(buf, r.ptr);
          }
          return out + ":" + std::to_string(s.depth) + ":" + std::to_string(s.seed);
        }
      },
      spec);
}

VertexId Meet(const RootedTree& t, VertexId v, VertexId w) {
  t.Check(v);
  t.Check(w);
  while (t.depth(v) > t.depth(w)) v = t.parent(v);
  while (t.depth(w) > t.depth(v)) w = t.parent(w);
  while (v != w) {
    v = t.parent(v);
    w = t.parent(w);
  }
  return v;
}

int Distance(const RootedTree& t, VertexId v, VertexId w) {
  const VertexId m = Meet(t, v, w);
  return t.depth(v) + t.depth(w) - 2 * t.depth(m);
}

MeetTable::MeetTable(const RootedTree& t) : n_(static_cast<std::size_t>(t.size())) {
  if (t.size() > kMaxMeetTableSize) {
    throw std::length_error("MeetTable: tree has " + std::to_string(t.size()) +
                            " vertices, limit is " +
                            std::to_string(kMaxMeetTableSize));
  }
  table_.resize(n_ * n_);
  // meet(v, w) = meet(parent(v), w) unless v is an ancestor of w; rows are
  // filled in index order so the parent's row is always ready.
  for (std::size_t v = 0; v < n_; ++v) {
    for (std::size_t w = 0; w < n_; ++w) {
      VertexId m;
      if (v == 0 || w == 0) {
        m = 0;
      } else if (v == w) {
        m = static_cast<VertexId>(v);
      } else if (w < v) {
        m = table_[w * n_ + v];
      } else {
        // w > v: w cannot be an ancestor of v.
        const VertexId pw = t.parent(static_cast<VertexId>(w));
        m = pw == static_cast<VertexId>(v) ? static_cast<VertexId>(v)
                                           : table_[v * n_ + pw];
      }
      table_[v * n_ + w] = m;
    }
  }
}

std::vector<std::int64_t> DescendantCounts(const RootedTree& t, int r) {
  if (r < 0) throw std::invalid_argument("DescendantCounts: r must be >= 0");
  const VertexId n = t.size();
  std::vector<std::int64_t> counts(n, 1), next(n);
  for (int step = 0; step < r; ++step) {
    std::fill(next.begin(), next.end(), 0);
    for (VertexId w = 1; w < n; ++w) next[t.parent(w)] += counts[w];
    counts.swap(next);
  }
  return counts;
}

std::int64_t DescendantsAt(const RootedTree& t, VertexId v, int r) {
  t.Check(v);
  if (r < 0) throw std::invalid_argument("DescendantsAt: r must be >= 0");
  std::vector<VertexId> frontier{v}, next;
  for (int step = 0; step < r && !frontier.empty(); ++step) {
    next.clear();
    for (VertexId u : frontier) {
      for (VertexId c : t.children(u)) next.push_back(c);
    }
    frontier.swap(next);
  }
  return static_cast<std::int64_t>(frontier.size());
}

std::vector<std::int64_t> SubtreeSizes(const RootedTree& t) {
  std::vector<std::int64_t> size(t.size(), 1);
  for (VertexId v = t.size() - 1; v > 0; --v) size[t.parent(v)] += size[v];
  return size;
}

std::vector<VertexId> BreadthFirstOrder(const RootedTree& t) {
  std::vector<VertexId> order(t.size());
  std::iota(order.begin(), order.end(), 0);
  if (!t.level_ordered()) {
    std::stable_sort(order.begin(), order.end(), [&](VertexId a, VertexId b) {
      return t.depth(a) < t.depth(b);
    });
  }
  return order;
}

RootedTree TruncateToDepth(const RootedTree& t, int k) {
  if (k < 0) throw std::invalid_argument("TruncateToDepth: k must be >= 0");
  // Queue-based BFS: children keep their relative order, so the result is
  // in level order with contiguous sibling blocks.
  std::vector<VertexId> new_id(t.size(), kNoParent);
  std::vector<VertexId> queue{0};
  std::vector<VertexId> parents{kNoParent};
  new_id[0] = 0;
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const VertexId v = queue[head];
    if (t.depth(v) >= k) continue;
    for (VertexId c : t.children(v)) {
      new_id[c] = static_cast<VertexId>(queue.size());
      queue.push_back(c);
      parents.push_back(new_id[v]);
    }
  }
  return RootedTree::FromParents(parents);
}

GrowthEstimates ComputeGrowthEstimates(const RootedTree& t) {
  GrowthEstimates g;
  const auto levels = t.level_sizes();
  std::int64_t ball = levels[0];
  std::vector<std::int64_t> counts(t.size(), 1), next(t.size());
  for (int r = 1; r <= t.height(); ++r) {
    std::fill(next.begin(), next.end(), 0);
    for (VertexId w = 1; w < t.size(); ++w) next[t.parent(w)] += counts[w];
    counts.swap(next);
    const double inv_r = 1.0 / r;
    ball += levels[r];
    g.root_growth.push_back(std::pow(static_cast<double>(levels[r]), inv_r));
    g.ball_growth.push_back(std::pow(static_cast<double>(ball), inv_r));
    const std::int64_t max_count = *std::max_element(counts.begin(), counts.end());
    g.max_growth.push_back(std::pow(static_cast<double>(max_count), inv_r));
  }
  return g;
}

}  // namespace treeconc

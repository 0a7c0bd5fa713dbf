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

#ifndef TREECONC_TREE_H_
#define TREECONC_TREE_H_

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace treeconc {

// Dense vertex index in [0, n). Index 0 is the root and every other vertex
// has a parent with a strictly smaller index.
using VertexId = std::int32_t;
inline constexpr VertexId kNoParent = -1;

// Immutable rooted tree stored as parent array plus a CSR children table.
// Children of a vertex are listed in increasing index order.
class RootedTree {
 public:
  // The single-vertex tree.
  RootedTree();

  // Validates `parents` (root sentinel -1 at position 0, every other entry j
  // at position i with 0 <= j < i). Throws std::invalid_argument naming the
  // offending index otherwise.
  static RootedTree FromParents(std::span<const VertexId> parents);

  VertexId size() const { return static_cast<VertexId>(parent_.size()); }
  VertexId root() const { return 0; }

  VertexId parent(VertexId v) const { return parent_[Check(v)]; }
  std::span<const VertexId> parents() const { return parent_; }
  std::span<const VertexId> children(VertexId v) const {
    Check(v);
    return {children_.data() + child_begin_[v],
            static_cast<std::size_t>(child_begin_[v + 1] - child_begin_[v])};
  }
  VertexId num_children(VertexId v) const {
    Check(v);
    return child_begin_[v + 1] - child_begin_[v];
  }
  bool is_leaf(VertexId v) const { return num_children(v) == 0; }
  int depth(VertexId v) const { return depth_[Check(v)]; }
  std::span<const std::int32_t> depths() const { return depth_; }

  // Largest depth of any vertex.
  int height() const { return height_; }
  // Maximum number of children of any vertex.
  VertexId max_children() const { return max_children_; }
  // level_sizes()[r] = |D_r(root)| for r in [0, height()].
  std::span<const std::int64_t> level_sizes() const { return level_sizes_; }

  // True when depths are nondecreasing along vertex ids, i.e. the numbering
  // is itself a breadth-first order and every ball B_k(root) is a prefix.
  bool level_ordered() const { return level_ordered_; }

  // Throws std::out_of_range for an id outside [0, size()).
  VertexId Check(VertexId v) const;

  friend bool operator==(const RootedTree& a, const RootedTree& b) {
    return a.parent_ == b.parent_;
  }

 private:
  std::vector<VertexId> parent_;
  std::vector<VertexId> child_begin_;
  std::vector<VertexId> children_;
  std::vector<std::int32_t> depth_;
  std::vector<std::int64_t> level_sizes_;
  int height_ = 0;
  VertexId max_children_ = 0;
  bool level_ordered_ = true;
};

// Generator specifications. All generators number vertices in level order
// with children assigned left to right.
struct DaryTreeSpec {
  int arity = 2;
  int depth = 0;
};
struct ThreeOneTreeSpec {
  int depth = 0;
};
struct PathTreeSpec {
  int length = 0;  // number of edges
};
struct GaltonWatsonSpec {
  std::vector<double> offspring;  // offspring[k] = P(k children)
  int depth = 0;
  std::uint64_t seed = 0;
};
using GeneratorSpec =
    std::variant<DaryTreeSpec, ThreeOneTreeSpec, PathTreeSpec, GaltonWatsonSpec>;

// Upper bound on generated vertex counts; larger requests are rejected.
inline constexpr std::int64_t kMaxGeneratedVertices = std::int64_t{1} << 30;

// Throws std::invalid_argument on an invalid spec and std::length_error when
// the vertex count would overflow VertexId.
RootedTree Generate(const GeneratorSpec& spec);

// Parses "dary:D:K", "threeone:K", "path:L" or "gw:P0,P1,...:K:SEED".
GeneratorSpec ParseGeneratorSpec(std::string_view text);
std::string ToString(const GeneratorSpec& spec);

// Exact vertex count of a generated tree without building it; -1 for
// Galton-Watson specs, whose size is known only after generation.
std::int64_t GeneratedVertexCount(const GeneratorSpec& spec);

// Deepest common ancestor, by ancestor walk with depth equalization.
VertexId Meet(const RootedTree& t, VertexId v, VertexId w);
// Number of edges on the path between v and w.
int Distance(const RootedTree& t, VertexId v, VertexId w);

// Precomputed all-pairs meet table for small trees (n <= kMaxMeetTableSize).
class MeetTable {
 public:
  static constexpr VertexId kMaxMeetTableSize = 1 << 12;
  explicit MeetTable(const RootedTree& t);
  VertexId operator()(VertexId v, VertexId w) const {
    return table_[static_cast<std::size_t>(v) * n_ + w];
  }

 private:
  std::size_t n_;
  std::vector<VertexId> table_;
};

// |D_r(v)|: descendants of v exactly r generations below it.
std::int64_t DescendantsAt(const RootedTree& t, VertexId v, int r);
// |D_r(v)| for every v at once, in O(r * n).
std::vector<std::int64_t> DescendantCounts(const RootedTree& t, int r);
// Number of vertices in the subtree rooted at each vertex.
std::vector<std::int64_t> SubtreeSizes(const RootedTree& t);

// Induced subtree on the closed ball B_k(root), renumbered breadth-first
// (level order, children in their original relative order).
RootedTree TruncateToDepth(const RootedTree& t, int k);

// The vertices of t listed level by level, ties broken by id.
std::vector<VertexId> BreadthFirstOrder(const RootedTree& t);

// Finite growth sequences for r = 1..height():
//   root_growth[r-1] = |D_r(root)|^{1/r}
//   ball_growth[r-1] = |B_r(root)|^{1/r}
//   max_growth[r-1]  = max_v |D_r(v)|^{1/r}
struct GrowthEstimates {
  std::vector<double> root_growth;
  std::vector<double> ball_growth;
  std::vector<double> max_growth;
};
GrowthEstimates ComputeGrowthEstimates(const RootedTree& t);

}  // namespace treeconc

#endif  // TREECONC_TREE_H_

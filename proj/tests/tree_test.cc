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

#include <gtest/gtest.h>

#include <cmath>
#include <numeric>
#include <random>
#include <stdexcept>

#include "oracles.h"
#include "treeconc/corpus.h"

namespace treeconc {
namespace {

RootedTree FromList(std::vector<VertexId> parents) { return RootedTree::FromParents(parents); }

TEST(RootedTreeTest, SingleVertex) {
  const RootedTree t = FromList({-1});
  EXPECT_EQ(t.size(), 1);
  EXPECT_EQ(t.depth(0), 0);
  EXPECT_TRUE(t.is_leaf(0));
  EXPECT_EQ(t, RootedTree());
}

TEST(RootedTreeTest, StarAndPath) {
  const RootedTree star = FromList({-1, 0, 0});
  EXPECT_EQ(star.num_children(0), 2);
  EXPECT_EQ(star.depth(1), 1);
  EXPECT_EQ(star.depth(2), 1);
  const RootedTree path = FromList({-1, 0, 1});
  EXPECT_EQ(path.depth(2), 2);
  EXPECT_EQ(path.height(), 2);
}

TEST(RootedTreeTest, ChildrenAreOrderedByIndex) {
  const RootedTree t = FromList({-1, 0, 1, 0, 1, 0});
  const auto kids = t.children(0);
  EXPECT_EQ(std::vector<VertexId>(kids.begin(), kids.end()), (std::vector<VertexId>{1, 3, 5}));
  const auto kids1 = t.children(1);
  EXPECT_EQ(std::vector<VertexId>(kids1.begin(), kids1.end()), (std::vector<VertexId>{2, 4}));
}

void ExpectRejectedAt(std::vector<VertexId> parents, const std::string& index) {
  try {
    RootedTree::FromParents(parents);
    FAIL() << "accepted an invalid parent array";
  } catch (const std::invalid_argument& e) {
    EXPECT_NE(std::string(e.what()).find(index), std::string::npos) << e.what();
  }
}

TEST(RootedTreeTest, RejectsMalformedParentArrays) {
  EXPECT_THROW(RootedTree::FromParents(std::vector<VertexId>{}), std::invalid_argument);
  ExpectRejectedAt({0}, "0");           // root without sentinel
  ExpectRejectedAt({-1, -1}, "1");      // forest
  ExpectRejectedAt({-1, 2, 0}, "1");    // forward parent
  ExpectRejectedAt({-1, 0, 2}, "2");    // self loop
  ExpectRejectedAt({-1, 0, 7}, "2");    // out of range
}

TEST(RootedTreeTest, RejectsInvalidIds) {
  const RootedTree t = FromList({-1, 0});
  EXPECT_THROW(t.depth(2), std::out_of_range);
  EXPECT_THROW(Distance(t, 0, -1), std::out_of_range);
  EXPECT_THROW(Meet(t, 5, 0), std::out_of_range);
}

TEST(GenerateTest, DaryCounts) {
  EXPECT_EQ(Generate(DaryTreeSpec{2, 2}).size(), 7);
  for (int d = 2; d <= 4; ++d) {
    for (int k = 0; k <= 5; ++k) {
      const auto expected = static_cast<VertexId>((std::pow(d, k + 1) - 1) / (d - 1));
      EXPECT_EQ(Generate(DaryTreeSpec{d, k}).size(), expected) << d << " " << k;
    }
  }
  EXPECT_EQ(Generate(DaryTreeSpec{1, 4}).size(), 5);
}

TEST(GenerateTest, ThreeOneLevelStructure) {
  for (int k = 0; k <= 10; ++k) {
    const RootedTree t = Generate(ThreeOneTreeSpec{k});
    ASSERT_EQ(t.height(), k);
    for (int j = 0; j <= k; ++j) {
      EXPECT_EQ(t.level_sizes()[j], std::int64_t{1} << j) << "k=" << k << " j=" << j;
    }
    EXPECT_EQ(DescendantsAt(t, 0, k), std::int64_t{1} << k);
    // Child counts per level: 2 at the root; 3 for the first half of each
    // inner level in level order and 1 for the rest.
    if (k >= 1) {
      EXPECT_EQ(t.num_children(0), 2);
    }
    VertexId v = 1;
    for (int j = 1; j < k; ++j) {
      const VertexId width = VertexId{1} << j;
      for (VertexId i = 0; i < width; ++i, ++v) {
        EXPECT_EQ(t.num_children(v), i < width / 2 ? 3 : 1) << "level " << j << " pos " << i;
      }
    }
  }
}

TEST(GenerateTest, Path) {
  const RootedTree t = Generate(PathTreeSpec{5});
  EXPECT_EQ(t.size(), 6);
  for (VertexId v = 0; v < t.size(); ++v) EXPECT_LE(DescendantsAt(t, v, 1), 1);
}

TEST(GenerateTest, GaltonWatsonDeterministicAndValidated) {
  const GaltonWatsonSpec spec{{0.2, 0.3, 0.5}, 6, 42};
  EXPECT_EQ(Generate(spec), Generate(spec));
  EXPECT_LE(Generate(spec).height(), 6);
  EXPECT_THROW(Generate(GaltonWatsonSpec{{0.2, 0.3}, 3, 1}), std::invalid_argument);
  EXPECT_EQ(Generate(GaltonWatsonSpec{{1.0}, 5, 1}).size(), 1);
}

TEST(GenerateTest, RejectsOversizedAndInvalidSpecs) {
  EXPECT_THROW(Generate(DaryTreeSpec{2, 40}), std::length_error);
  EXPECT_THROW(Generate(ThreeOneTreeSpec{40}), std::length_error);
  EXPECT_THROW(Generate(DaryTreeSpec{0, 3}), std::invalid_argument);
  EXPECT_THROW(Generate(PathTreeSpec{-1}), std::invalid_argument);
}

TEST(GenerateTest, ParseRoundTrip) {
  for (const char* text : {"dary:2:3", "threeone:4", "path:7", "gw:0.25,0.25,0.5:5:9"}) {
    const GeneratorSpec spec = ParseGeneratorSpec(text);
    EXPECT_EQ(ToString(spec), text);
  }
  EXPECT_EQ(GeneratedVertexCount(ParseGeneratorSpec("gw:0.5,0.5:4:1")), -1);
  EXPECT_EQ(GeneratedVertexCount(ParseGeneratorSpec("dary:3:2")), 13);
  for (const char* bad : {"", "dary:2", "tree:3", "path:x", "dary:2:3:4", "gw::3:1"}) {
    EXPECT_THROW(ParseGeneratorSpec(bad), std::invalid_argument) << bad;
  }
}

TEST(MetricTest, Examples) {
  const RootedTree path = FromList({-1, 0, 1});
  EXPECT_EQ(Distance(path, 0, 2), 2);
  EXPECT_EQ(Meet(path, 1, 2), 1);
  const RootedTree star = FromList({-1, 0, 0});
  EXPECT_EQ(Distance(star, 1, 2), 2);
  EXPECT_EQ(Meet(star, 1, 2), 0);
  const RootedTree binary = Generate(DaryTreeSpec{2, 2});
  EXPECT_EQ(Meet(binary, 3, 5), 0);
  EXPECT_EQ(Meet(binary, 3, 4), 1);
  for (VertexId v = 0; v < binary.size(); ++v) {
    EXPECT_EQ(Distance(binary, v, v), 0);
    EXPECT_EQ(Meet(binary, v, v), v);
    EXPECT_EQ(Meet(binary, 0, v), 0);
  }
}

TEST(MetricTest, MatchesBfsOnRandomTrees) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 12; ++trial) {
    const RootedTree t = RandomTree(trial < 6 ? 500 : 60 + trial, rng);
    const MeetTable table(t);
    for (VertexId v = 0; v < t.size(); v += 7) {
      const std::vector<int> bfs = testing::BfsDistances(t, v);
      for (VertexId w = 0; w < t.size(); ++w) {
        const VertexId m = Meet(t, v, w);
        ASSERT_EQ(Distance(t, v, w), bfs[w]);
        ASSERT_EQ(Distance(t, v, w), t.depth(v) + t.depth(w) - 2 * t.depth(m));
        ASSERT_EQ(Distance(t, w, v), bfs[w]);
        ASSERT_TRUE(testing::IsAncestor(t, m, v) && testing::IsAncestor(t, m, w));
        ASSERT_EQ(table(v, w), m);
      }
    }
  }
}

TEST(MeetTableTest, RejectsLargeTrees) {
  EXPECT_THROW(MeetTable(Generate(PathTreeSpec{5000})), std::length_error);
}

TEST(DescendantsTest, Examples) {
  const RootedTree t = Generate(DaryTreeSpec{2, 3});
  EXPECT_EQ(DescendantsAt(t, 0, 2), 4);
  EXPECT_EQ(DescendantsAt(t, 0, 0), 1);
  EXPECT_EQ(DescendantsAt(t, 0, 9), 0);
  EXPECT_EQ(DescendantsAt(Generate(ThreeOneTreeSpec{4}), 0, 4), 16);
  const VertexId leaf = t.size() - 1;
  EXPECT_EQ(DescendantsAt(t, leaf, 1), 0);
}

TEST(DescendantsTest, GenerationsSumToSubtreeSize) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    const RootedTree t = RandomTree(1 + trial * 13, rng);
    const auto sizes = SubtreeSizes(t);
    for (VertexId v = 0; v < t.size(); ++v) {
      std::int64_t total = 0;
      for (int r = 0; r <= t.height(); ++r) total += DescendantsAt(t, v, r);
      EXPECT_EQ(total, sizes[v]);
    }
    for (int r = 0; r <= t.height(); ++r) {
      const auto counts = DescendantCounts(t, r);
      for (VertexId v = 0; v < t.size(); ++v) ASSERT_EQ(counts[v], DescendantsAt(t, v, r));
    }
  }
}

TEST(TruncateTest, Examples) {
  const RootedTree t = Generate(DaryTreeSpec{2, 3});
  EXPECT_EQ(TruncateToDepth(t, 2).size(), 7);
  EXPECT_EQ(TruncateToDepth(t, 0).size(), 1);
  EXPECT_EQ(TruncateToDepth(t, 3), t);
  EXPECT_EQ(TruncateToDepth(t, 10), t);
  EXPECT_EQ(TruncateToDepth(t, 2), Generate(DaryTreeSpec{2, 2}));
}

TEST(TruncateTest, ComposesAndRenumbersBreadthFirst) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 30; ++trial) {
    const RootedTree t = RandomTree(1 + trial * 9, rng);
    for (int k = 0; k <= t.height(); ++k) {
      const RootedTree tk = TruncateToDepth(t, k);
      EXPECT_TRUE(tk.level_ordered());
      EXPECT_EQ(tk.height(), k);
      for (int j = 0; j <= k; ++j) {
        EXPECT_EQ(TruncateToDepth(tk, j), TruncateToDepth(t, j));
        EXPECT_EQ(tk.level_sizes()[j], t.level_sizes()[j]);
      }
    }
  }
}

TEST(BreadthFirstOrderTest, IsAPermutationSortedByDepth) {
  std::mt19937_64 rng(8);
  const RootedTree t = RandomTree(200, rng);
  const auto order = BreadthFirstOrder(t);
  std::vector<VertexId> sorted(order.begin(), order.end());
  std::sort(sorted.begin(), sorted.end());
  std::vector<VertexId> ids(t.size());
  std::iota(ids.begin(), ids.end(), 0);
  EXPECT_EQ(sorted, ids);
  for (std::size_t i = 1; i < order.size(); ++i) {
    EXPECT_LE(t.depth(order[i - 1]), t.depth(order[i]));
  }
}

TEST(GrowthTest, KnownFamilies) {
  const GrowthEstimates binary = ComputeGrowthEstimates(Generate(DaryTreeSpec{2, 12}));
  ASSERT_EQ(binary.root_growth.size(), 12u);
  for (double g : binary.root_growth) EXPECT_DOUBLE_EQ(g, 2.0);
  for (double g : binary.max_growth) EXPECT_DOUBLE_EQ(g, 2.0);

  const GrowthEstimates threeone = ComputeGrowthEstimates(Generate(ThreeOneTreeSpec{12}));
  for (double g : threeone.root_growth) EXPECT_DOUBLE_EQ(g, 2.0);
  // Leftmost vertices root 3-ary subtrees of depth growing with their level,
  // so the estimate is 3 for small r and falls off once r nears the height.
  EXPECT_DOUBLE_EQ(threeone.max_growth[0], 3.0);
  for (std::size_t r = 1; r < threeone.max_growth.size(); ++r) {
    EXPECT_LE(threeone.max_growth[r], threeone.max_growth[r - 1] + 1e-12);
    EXPECT_GE(threeone.max_growth[r], 2.0 - 1e-12);
  }

  const GrowthEstimates path = ComputeGrowthEstimates(Generate(PathTreeSpec{12}));
  for (double g : path.root_growth) EXPECT_DOUBLE_EQ(g, 1.0);
  for (double g : path.ball_growth) EXPECT_GE(g, 1.0);
  for (double g : path.max_growth) EXPECT_DOUBLE_EQ(g, 1.0);
  EXPECT_NEAR(path.ball_growth.back(), std::pow(13.0, 1.0 / 12.0), 1e-12);
}

}  // namespace
}  // namespace treeconc

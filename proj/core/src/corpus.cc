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

#include "treeconc/corpus.h"

#include <cmath>
#include <stdexcept>

namespace treeconc {

RootedTree RandomTree(VertexId n, std::mt19937_64& rng) {
  if (n < 1) throw std::invalid_argument("RandomTree: need n >= 1");
  std::vector<VertexId> parents(n, kNoParent);
  const int style = static_cast<int>(rng() % 3);
  for (VertexId i = 1; i < n; ++i) {
    VertexId lo = 0, hi = i - 1;
    if (style == 1) lo = std::max<VertexId>(0, i - 3);
    if (style == 2) hi = static_cast<VertexId>(std::ceil(std::sqrt(static_cast<double>(i)))) - 1;
    parents[i] = std::uniform_int_distribution<VertexId>(lo, hi)(rng);
  }
  return RootedTree::FromParents(parents);
}

std::vector<RootedTree> RandomTrees(int count, VertexId max_n, std::uint64_t seed) {
  if (count < 0 || max_n < 1) throw std::invalid_argument("RandomTrees: bad arguments");
  std::mt19937_64 rng(seed);
  std::vector<RootedTree> trees;
  trees.reserve(count);
  for (int i = 0; i < count; ++i) {
    const VertexId n = std::uniform_int_distribution<VertexId>(1, max_n)(rng);
    trees.push_back(RandomTree(n, rng));
  }
  return trees;
}

std::vector<CorpusTree> VerificationCorpus(std::uint64_t seed) {
  std::vector<CorpusTree> corpus;
  auto add_spec = [&](const std::string& spec) {
    corpus.push_back({spec, Generate(ParseGeneratorSpec(spec))});
  };
  auto add_parents = [&](const std::string& name, std::vector<VertexId> parents) {
    corpus.push_back({name, RootedTree::FromParents(parents)});
  };
  add_spec("path:0");
  add_spec("path:1");
  add_parents("star:2", {-1, 0, 0});
  add_spec("path:2");
  add_spec("path:4");
  add_parents("star:5", {-1, 0, 0, 0, 0, 0});
  add_spec("dary:3:1");
  add_spec("dary:2:2");
  add_spec("threeone:2");
  add_parents("caterpillar:8", {-1, 0, 1, 2, 0, 1, 2, 3});
  add_spec("path:11");
  add_spec("dary:2:3");
  add_spec("threeone:3");
  std::mt19937_64 rng(seed);
  for (int i = 0; i < 8; ++i) {
    const VertexId n = std::uniform_int_distribution<VertexId>(3, 12)(rng);
    corpus.push_back({"random:" + std::to_string(i), RandomTree(n, rng)});
  }
  return corpus;
}

}  // namespace treeconc

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

#ifndef TREECONC_CORPUS_H_
#define TREECONC_CORPUS_H_

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "treeconc/tree.h"

namespace treeconc {

struct CorpusTree {
  std::string name;
  RootedTree tree;
};

// Small named trees (n <= 15) plus seeded random trees with n <= 12. Every
// verification routine runs over this set.
std::vector<CorpusTree> VerificationCorpus(std::uint64_t seed);

// A random tree on n vertices with parents preceding children. The shape
// cycles through uniform recursive, deep (parent among the last three) and
// bushy (parent among the first sqrt(i)) attachment rules.
RootedTree RandomTree(VertexId n, std::mt19937_64& rng);

// `count` random trees with sizes uniform in [1, max_n].
std::vector<RootedTree> RandomTrees(int count, VertexId max_n, std::uint64_t seed);

}  // namespace treeconc

#endif  // TREECONC_CORPUS_H_

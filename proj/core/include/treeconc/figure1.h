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

#ifndef TREECONC_FIGURE1_H_
#define TREECONC_FIGURE1_H_

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "treeconc/delta.h"

namespace treeconc {

enum class Figure1Family { kThreeOne, kBinary };

Figure1Family ParseFigure1Family(std::string_view text);  // "threeone" | "dary2"
std::string ToString(Figure1Family family);
int Figure1MaxDepth(Figure1Family family);  // 25 and 30

// A b value and the label used for its CSV column. `isqrt3` and `isqrt2`
// stand for 1/sqrt(3) and 1/sqrt(2).
struct BValue {
  std::string token;
  double value = 0.0;
};
BValue ParseBValue(std::string_view text);
std::vector<BValue> ParseBList(std::string_view comma_separated);

struct Figure1Table {
  Figure1Family family = Figure1Family::kThreeOne;
  int k_max = 0;
  std::vector<BValue> bs;
  std::vector<DeltaSeries> series;  // one per b, same order
};

// Delta_k^2 / |V_k| for k = 0..k_max. The 3-1 tree is evaluated level by
// level without building the tree; the binary tree uses its spherical
// symmetry. Columns are computed in parallel.
Figure1Table ComputeFigure1(Figure1Family family, const std::vector<BValue>& bs, int k_max);

// Header `k,n_vertices,b=<token>,...`, one row per k.
void WriteFigure1Csv(std::ostream& out, const Figure1Table& table);

}  // namespace treeconc

#endif  // TREECONC_FIGURE1_H_

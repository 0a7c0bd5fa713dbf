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

#include "treeconc/figure1.h"

#include <cmath>
#include <ostream>
#include <stdexcept>
#include <string>

#include "treeconc/numeric_format.h"
#include "treeconc/parallel.h"

namespace treeconc {

Figure1Family ParseFigure1Family(std::string_view text) {
  if (text == "threeone") return Figure1Family::kThreeOne;
  if (text == "dary2") return Figure1Family::kBinary;
  throw std::invalid_argument("unknown figure family '" + std::string(text) +
                              "' (expected threeone or dary2)");
}

std::string ToString(Figure1Family family) {
  return family == Figure1Family::kThreeOne ? "threeone" : "dary2";
}

int Figure1MaxDepth(Figure1Family family) {
  return family == Figure1Family::kThreeOne ? 25 : 30;
}

BValue ParseBValue(std::string_view text) {
  BValue out;
  out.token = std::string(text);
  if (text == "isqrt3") {
    out.value = 1.0 / std::sqrt(3.0);
    return out;
  }
  if (text == "isqrt2") {
    out.value = 1.0 / std::sqrt(2.0);
    return out;
  }
  std::size_t used = 0;
  try {
    out.value = std::stod(out.token, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != text.size()) {
    throw std::invalid_argument("invalid b value '" + out.token + "'");
  }
  if (!(out.value >= 0.0 && out.value < 1.0)) {
    throw std::invalid_argument("b value '" + out.token + "' outside [0, 1)");
  }
  out.token = FormatNumber(out.value);
  return out;
}

std::vector<BValue> ParseBList(std::string_view comma_separated) {
  std::vector<BValue> out;
  std::size_t start = 0;
  while (start <= comma_separated.size()) {
    std::size_t comma = comma_separated.find(',', start);
    if (comma == std::string_view::npos) comma = comma_separated.size();
    out.push_back(ParseBValue(comma_separated.substr(start, comma - start)));
    start = comma + 1;
  }
  return out;
}

Figure1Table ComputeFigure1(Figure1Family family, const std::vector<BValue>& bs, int k_max) {
  const int limit = Figure1MaxDepth(family);
  if (k_max < 0 || k_max > limit) {
    // Both families have 2^(k+1) - 1 vertices at depth k.
    const double vertices = std::ldexp(1.0, k_max + 1) - 1;
    throw std::invalid_argument("k_max " + std::to_string(k_max) + " outside [0, " +
                                std::to_string(limit) + "] for " + ToString(family) +
                                " (would need about " + FormatNumber(vertices) +
                                " vertices)");
  }
  if (bs.empty()) throw std::invalid_argument("ComputeFigure1: empty b list");
  for (const BValue& b : bs) ValidateContraction(b.value);

  Figure1Table table;
  table.family = family;
  table.k_max = k_max;
  table.bs = bs;
  table.series.resize(bs.size());
  if (family == Figure1Family::kThreeOne) {
    const LevelProfile levels = LevelProfile::ThreeOne(k_max);
    ParallelFor(bs.size(), [&](std::size_t i) {
      table.series[i] = ComputeDeltaSeries(levels, bs[i].value, k_max);
    });
  } else {
    const std::vector<std::int64_t> branching(k_max, 2);
    ParallelFor(bs.size(), [&](std::size_t i) {
      table.series[i] = ComputeSymmetricDeltaSeries(branching, bs[i].value, k_max);
    });
  }
  return table;
}

void WriteFigure1Csv(std::ostream& out, const Figure1Table& table) {
  out << "k,n_vertices";
  for (const BValue& b : table.bs) out << ",b=" << b.token;
  out << '\n';
  for (int k = 0; k <= table.k_max; ++k) {
    out << k << ',' << table.series.front().vertex_counts[k];
    for (const DeltaSeries& s : table.series) out << ',' << FormatNumber(s.ratios[k]);
    out << '\n';
  }
}

}  // namespace treeconc

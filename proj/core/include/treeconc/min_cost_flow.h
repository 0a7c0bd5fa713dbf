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

#ifndef TREECONC_MIN_COST_FLOW_H_
#define TREECONC_MIN_COST_FLOW_H_

#include <cstdint>
#include <span>
#include <vector>

namespace treeconc {

// Optimal solution of a balanced transportation problem
//   min sum_ij cost_ij x_ij  s.t.  sum_j x_ij = supply_i, sum_i x_ij = demand_j
// together with dual potentials certifying it: u_i + v_j <= cost_ij for all
// pairs, with equality wherever x_ij > 0.
struct TransportationSolution {
  std::size_t num_sources = 0;
  std::size_t num_sinks = 0;
  std::vector<double> flow;                  // row-major sources x sinks
  std::vector<std::int64_t> source_potential;  // u
  std::vector<std::int64_t> sink_potential;    // v
  double unmatched_mass = 0.0;  // rounding imbalance left unshipped
  int augmentations = 0;
};

// Successive shortest paths on the complete bipartite graph with integer
// costs, Dijkstra on reduced costs with Johnson potentials, dense O(V^2)
// node selection and early exit at the first sink with remaining demand.
// Costs must be nonnegative; supplies and demands must be nonnegative and
// have equal totals up to 1e-12.
TransportationSolution SolveTransportation(std::span<const double> supply,
                                           std::span<const double> demand,
                                           std::span<const std::int64_t> cost);

}  // namespace treeconc

#endif  // TREECONC_MIN_COST_FLOW_H_

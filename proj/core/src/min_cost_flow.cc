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

#include "treeconc/min_cost_flow.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>

namespace treeconc {

TransportationSolution SolveTransportation(std::span<const double> supply,
                                           std::span<const double> demand,
                                           std::span<const std::int64_t> cost) {
  const std::size_t num_s = supply.size();
  const std::size_t num_t = demand.size();
  if (cost.size() != num_s * num_t) {
    throw std::invalid_argument("SolveTransportation: cost matrix has wrong size");
  }
  double total_supply = 0.0, total_demand = 0.0;
  for (double s : supply) {
    if (!(s >= 0.0)) throw std::invalid_argument("SolveTransportation: negative supply");
    total_supply += s;
  }
  for (double d : demand) {
    if (!(d >= 0.0)) throw std::invalid_argument("SolveTransportation: negative demand");
    total_demand += d;
  }
  if (std::abs(total_supply - total_demand) > 1e-12) {
    throw std::invalid_argument("SolveTransportation: unbalanced problem (" +
                                std::to_string(total_supply) + " vs " +
                                std::to_string(total_demand) + ")");
  }
  for (std::int64_t c : cost) {
    if (c < 0) throw std::invalid_argument("SolveTransportation: negative cost");
  }

  constexpr std::int64_t kInf = std::numeric_limits<std::int64_t>::max() / 4;
  const std::size_t num_nodes = num_s + num_t;
  TransportationSolution sol;
  sol.num_sources = num_s;
  sol.num_sinks = num_t;
  sol.flow.assign(num_s * num_t, 0.0);

  std::vector<double> left(supply.begin(), supply.end());
  std::vector<double> need(demand.begin(), demand.end());
  // Node x < num_s is source x, otherwise sink x - num_s.
  std::vector<std::int64_t> potential(num_nodes, 0);
  std::vector<std::int64_t> dist(num_nodes);
  std::vector<std::ptrdiff_t> prev(num_nodes);
  std::vector<char> done(num_nodes);

  auto c = [&](std::size_t i, std::size_t j) { return cost[i * num_t + j]; };

  while (true) {
    bool any_supply = false;
    std::fill(dist.begin(), dist.end(), kInf);
    std::fill(prev.begin(), prev.end(), -1);
    std::fill(done.begin(), done.end(), 0);
    for (std::size_t i = 0; i < num_s; ++i) {
      if (left[i] > 0.0) {
        dist[i] = 0;
        any_supply = true;
      }
    }
    if (!any_supply) break;

    std::ptrdiff_t target = -1;
    while (true) {
      std::ptrdiff_t u = -1;
      std::int64_t best = kInf;
      for (std::size_t x = 0; x < num_nodes; ++x) {
        if (!done[x] && dist[x] < best) {
          best = dist[x];
          u = static_cast<std::ptrdiff_t>(x);
        }
      }
      if (u < 0) break;
      done[u] = 1;
      if (static_cast<std::size_t>(u) >= num_s) {
        const std::size_t j = static_cast<std::size_t>(u) - num_s;
        if (need[j] > 0.0) {
          target = u;
          break;
        }
        // Residual reverse arcs sink j -> source i exist where flow > 0.
        for (std::size_t i = 0; i < num_s; ++i) {
          if (done[i] || sol.flow[i * num_t + j] <= 0.0) continue;
          const std::int64_t reduced = -c(i, j) + potential[u] - potential[i];
          const std::int64_t nd = best + reduced;
          if (nd < dist[i]) {
            dist[i] = nd;
            prev[i] = u;
          }
        }
      } else {
        const std::size_t i = static_cast<std::size_t>(u);
        for (std::size_t j = 0; j < num_t; ++j) {
          const std::size_t x = num_s + j;
          if (done[x]) continue;
          const std::int64_t reduced = c(i, j) + potential[i] - potential[x];
          const std::int64_t nd = best + reduced;
          if (nd < dist[x]) {
            dist[x] = nd;
            prev[x] = u;
          }
        }
      }
    }

    if (target < 0) {
      // Only rounding dust can be left when nothing is reachable.
      double rest = 0.0;
      for (double s : left) rest += s;
      if (rest > 1e-12) {
        throw std::runtime_error("SolveTransportation: no augmenting path for " +
                                 std::to_string(rest) + " units of supply");
      }
      sol.unmatched_mass = rest;
      break;
    }

    const std::int64_t reach = dist[target];
    for (std::size_t x = 0; x < num_nodes; ++x) {
      potential[x] += std::min(dist[x], reach);
    }

    // Bottleneck along the path target <- ... <- origin source.
    double amount = need[target - static_cast<std::ptrdiff_t>(num_s)];
    std::ptrdiff_t x = target;
    while (prev[x] >= 0) {
      const std::ptrdiff_t p = prev[x];
      if (static_cast<std::size_t>(p) >= num_s) {
        // Reverse arc sink p -> source x cancels flow (x, p).
        amount = std::min(amount, sol.flow[x * num_t + (p - num_s)]);
      }
      x = p;
    }
    amount = std::min(amount, left[x]);

    x = target;
    while (prev[x] >= 0) {
      const std::ptrdiff_t p = prev[x];
      if (static_cast<std::size_t>(p) >= num_s) {
        double& f = sol.flow[x * num_t + (p - num_s)];
        f = f == amount ? 0.0 : f - amount;
      } else {
        sol.flow[p * num_t + (x - num_s)] += amount;
      }
      x = p;
    }
    left[x] = left[x] == amount ? 0.0 : left[x] - amount;
    double& remaining = need[target - static_cast<std::ptrdiff_t>(num_s)];
    remaining = remaining == amount ? 0.0 : remaining - amount;
    ++sol.augmentations;
  }

  sol.source_potential.resize(num_s);
  sol.sink_potential.resize(num_t);
  for (std::size_t i = 0; i < num_s; ++i) sol.source_potential[i] = -potential[i];
  for (std::size_t j = 0; j < num_t; ++j) sol.sink_potential[j] = potential[num_s + j];
  return sol;
}

}  // namespace treeconc

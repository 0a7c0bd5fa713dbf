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

#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <random>

namespace treeconc {
namespace {

void ExpectCertified(const TransportationSolution& sol, const std::vector<double>& supply,
                     const std::vector<double>& demand, const std::vector<std::int64_t>& cost) {
  const std::size_t s = supply.size(), t = demand.size();
  for (std::size_t i = 0; i < s; ++i) {
    double row = 0.0;
    for (std::size_t j = 0; j < t; ++j) {
      const double f = sol.flow[i * t + j];
      EXPECT_GE(f, 0.0);
      row += f;
      const std::int64_t reduced = cost[i * t + j] - sol.source_potential[i] - sol.sink_potential[j];
      EXPECT_GE(reduced, 0) << "dual infeasible at " << i << "," << j;
      if (f > 0.0) EXPECT_EQ(reduced, 0) << "slackness fails at " << i << "," << j;
    }
    EXPECT_NEAR(row, supply[i], 1e-12);
  }
  for (std::size_t j = 0; j < t; ++j) {
    double col = 0.0;
    for (std::size_t i = 0; i < s; ++i) col += sol.flow[i * t + j];
    EXPECT_NEAR(col, demand[j], 1e-12);
  }
}

double Cost(const TransportationSolution& sol, const std::vector<std::int64_t>& cost) {
  double c = 0.0;
  for (std::size_t k = 0; k < cost.size(); ++k) c += sol.flow[k] * static_cast<double>(cost[k]);
  return c;
}

TEST(SolveTransportationTest, SmallHandInstance) {
  const std::vector<double> supply{0.5, 0.5}, demand{0.25, 0.75};
  const std::vector<std::int64_t> cost{0, 10, 10, 0};
  const auto sol = SolveTransportation(supply, demand, cost);
  EXPECT_NEAR(sol.flow[0], 0.25, 1e-15);
  EXPECT_NEAR(sol.flow[1], 0.25, 1e-15);
  EXPECT_NEAR(sol.flow[3], 0.5, 1e-15);
  EXPECT_NEAR(Cost(sol, cost), 2.5, 1e-12);
  ExpectCertified(sol, supply, demand, cost);
}

// Uniform masses on equal-size sides: an optimal plan is a permutation
// (Birkhoff), so brute force over permutations is an exact oracle.
TEST(SolveTransportationTest, MatchesAssignmentBruteForce) {
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<std::int64_t> c(0, 1000);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t n = 2 + trial % 5;
    std::vector<std::int64_t> cost(n * n);
    for (auto& x : cost) x = c(rng);
    const std::vector<double> mass(n, 1.0 / n);
    const auto sol = SolveTransportation(mass, mass, cost);
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    double best = 1e300;
    do {
      double total = 0.0;
      for (std::size_t i = 0; i < n; ++i) total += static_cast<double>(cost[i * n + perm[i]]);
      best = std::min(best, total / n);
    } while (std::next_permutation(perm.begin(), perm.end()));
    EXPECT_NEAR(Cost(sol, cost), best, 1e-9);
    ExpectCertified(sol, mass, mass, cost);
  }
}

TEST(SolveTransportationTest, RectangularRandomInstancesAreCertified) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::uniform_int_distribution<std::int64_t> c(0, 1'000'000'000);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t s = 1 + trial % 7, t = 1 + (trial * 3) % 9;
    std::vector<double> supply(s), demand(t);
    for (auto& x : supply) x = u(rng);
    for (auto& x : demand) x = u(rng);
    const double ss = std::accumulate(supply.begin(), supply.end(), 0.0);
    const double ds = std::accumulate(demand.begin(), demand.end(), 0.0);
    for (auto& x : supply) x /= ss;
    for (auto& x : demand) x *= 1.0 / ds;
    std::vector<std::int64_t> cost(s * t);
    for (auto& x : cost) x = c(rng);
    const auto sol = SolveTransportation(supply, demand, cost);
    ExpectCertified(sol, supply, demand, cost);
  }
}

TEST(SolveTransportationTest, RejectsInvalidInput) {
  const std::vector<std::int64_t> cost{0, 1, 1, 0};
  EXPECT_THROW(SolveTransportation(std::vector<double>{0.5, 0.5}, std::vector<double>{0.5, 0.6}, cost),
               std::invalid_argument);
  EXPECT_THROW(SolveTransportation(std::vector<double>{1.0}, std::vector<double>{1.0}, cost),
               std::invalid_argument);
  EXPECT_THROW(SolveTransportation(std::vector<double>{-0.5, 1.5}, std::vector<double>{0.5, 0.5}, cost),
               std::invalid_argument);
}

}  // namespace
}  // namespace treeconc

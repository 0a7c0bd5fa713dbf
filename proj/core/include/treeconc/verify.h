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

#ifndef TREECONC_VERIFY_H_
#define TREECONC_VERIFY_H_

#include <cstdint>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "treeconc/broadcast.h"
#include "treeconc/measure.h"
#include "treeconc/tree.h"

namespace treeconc {

// A report passes when worst_slack >= -kSlackTolerance.
inline constexpr double kSlackTolerance = 1e-9;

struct InequalityReport {
  std::string name;
  std::int64_t instances = 0;
  // min over instances of (bound - achieved); identities record -|lhs - rhs|.
  double worst_slack = std::numeric_limits<double>::infinity();
  bool passed = true;
  std::string witness;   // the instance attaining worst_slack
  std::string advisory;  // informational output, never part of pass/fail

  void Record(double slack, const std::string& where);
  void Merge(const InequalityReport& other);
};

// A test function f on configurations: either separable, with per-vertex
// values c_v(x) (n x H, f = (1/n) sum_v c_v(x_v)), or tabulated by rank.
struct TestFunction {
  std::string name;
  std::vector<double> linear;
  std::vector<double> table;
};

TestFunction MagnetizationFunction(int n);

// `count` 1-Lipschitz functions on {0,1}^n under the normalized Hamming
// metric, each the McShane extension of random values on a few anchors.
std::vector<TestFunction> McShaneFunctions(int n, int count, std::uint64_t seed);

// E exp(n lambda (f - E f)) <= exp(lambda^2 Delta^2 / 8), with Delta taken at
// b = KernelLipschitz(model). Tabulated functions are checked to be
// 1-Lipschitz first; a violation throws std::invalid_argument naming the pair.
InequalityReport CheckExpMoment(const MarkovTreeModel& model,
                                std::span<const TestFunction> functions,
                                std::span<const double> lambdas,
                                const std::string& label = "");

// Point masses at every configuration, exponential tilts of nu by the
// magnetization at lambda in {-1, -0.5, 0.5, 1}, and nu conditioned on each
// single-vertex event of positive probability.
std::vector<ExactMeasure> TransportTestMeasures(const ExactMeasure& nu);

// d(mu, nu) <= (Delta / n) sqrt(D(mu || nu) / 2) for each mu. Measures with
// infinite relative entropy count as satisfied.
InequalityReport CheckT1(const MarkovTreeModel& model, std::span<const ExactMeasure> mus,
                         const std::string& label = "");

// nu{|f - E f| >= eps} for the magnetization, from its exact distribution.
double ExactMagnetizationTail(std::span<const double> distribution, double eps);

// Exact magnetization tails against 2 exp(-2 n^2 eps^2 / Delta^2). When
// mc_samples > 0 the empirical tails are attached as advisory output.
InequalityReport CheckTail(const IsingModel& model, std::span<const double> epsilons,
                           std::size_t mc_samples = 0, std::uint64_t seed = 0,
                           const std::string& label = "");

// Var f = S / (4 n^2) against the exact distribution, S >= (1 - b^2) Delta^2,
// and Delta sqrt(1 - b^2) / 2 <= Delta.
InequalityReport CheckOptimalityChain(const RootedTree& t, double p,
                                      const std::string& label = "");

// ||M||_inf = max delta, ||M 1||_2 = Delta and Delta / sqrt(n) <= ||M||_2 for
// the mixing matrix M in the canonical order and three random breadth-first
// orders.
InequalityReport CheckMixingCorollary(const RootedTree& t, double b, std::uint64_t seed,
                                      const std::string& label = "");

// S <= Delta^2 <= S / (1 - b^2) with S from the quadratic oracle, and the
// bound sqrt(n) / (1 - b d) whenever b d < 1.
InequalityReport CheckDeltaBounds(const RootedTree& t, double b,
                                  const std::string& label = "");

// Every check above over VerificationCorpus(seed), flip probabilities
// {0.05, 0.1, 0.25, 0.4, 0.5} and b in {0, 0.3, 0.6, 0.9}.
std::vector<InequalityReport> RunVerificationSuite(std::uint64_t seed);

}  // namespace treeconc

#endif  // TREECONC_VERIFY_H_

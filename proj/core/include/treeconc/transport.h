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

#ifndef TREECONC_TRANSPORT_H_
#define TREECONC_TRANSPORT_H_

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "treeconc/measure.h"

namespace treeconc {

// d(x, y) = (1/n) sum_i weight_i * d_base(x_i, y_i) on configurations of n
// coordinates. Unit weights give the normalized Hamming metric.
class WeightedHamming {
 public:
  WeightedHamming(StateSpace base, int n);
  WeightedHamming(StateSpace base, std::vector<double> weights);

  int n() const { return static_cast<int>(weights_.size()); }
  const StateSpace& base() const { return base_; }
  std::span<const double> weights() const { return weights_; }

  double Distance(std::span<const std::uint8_t> x, std::span<const std::uint8_t> y) const;
  double Distance(ConfigurationRank x, ConfigurationRank y) const;

 private:
  StateSpace base_;
  std::vector<double> weights_;
};

// Probabilities below this are dropped from supports before solving.
inline constexpr double kSupportCutoff = 1e-15;
// Combined support size handled by the exact solver.
inline constexpr std::size_t kMaxTransportSupport = 4096;
// Distances are scaled by this factor and rounded to integer costs.
inline constexpr double kCostScale = 1e9;

struct TransportPlan {
  std::vector<ConfigurationRank> source_support;  // support of mu
  std::vector<ConfigurationRank> target_support;  // support of nu
  std::vector<double> coupling;  // row-major source_support x target_support
  double cost = 0.0;             // sum coupling * distance (unscaled)
  double dual_objective = 0.0;   // sum u mu + sum v nu
  double max_dual_violation = 0.0;  // max(u_i + v_j - d_ij, 0)
  double max_slackness_gap = 0.0;   // max |d_ij - u_i - v_j| over coupled pairs
  double dropped_source_mass = 0.0;
  double dropped_target_mass = 0.0;
};

struct TransportResult {
  double distance = 0.0;
  TransportPlan plan;
};

// Exact transportation distance between two measures on the same
// configuration space, by min-cost flow on the bipartite support graph.
// The plan's feasibility and the dual certificate are checked before
// returning; a failed check throws std::logic_error.
TransportResult Wasserstein(const ExactMeasure& mu, const ExactMeasure& nu,
                            const WeightedHamming& metric);

// Transportation distance between two distributions on the base space.
double BaseWasserstein(const StateSpace& space, std::span<const double> mu,
                       std::span<const double> nu);

// Total variation distance, max_A |mu(A) - nu(A)|.
double TotalVariation(std::span<const double> mu, std::span<const double> nu);

// D(mu || nu) in nats with 0 log 0 = 0. +infinity when mu is not
// absolutely continuous with respect to nu.
double RelativeEntropy(const ExactMeasure& mu, const ExactMeasure& nu);

// f(x) = min_i (values_i + d(x, points_i)) over every configuration. The
// result is 1-Lipschitz and agrees with the input wherever the input was
// 1-Lipschitz on its domain.
std::vector<double> McShaneExtension(std::span<const ConfigurationRank> points,
                                     std::span<const double> values,
                                     const WeightedHamming& metric);

struct LipschitzViolation {
  ConfigurationRank x = 0;
  ConfigurationRank y = 0;
  double difference = 0.0;  // |f(x) - f(y)|
  double distance = 0.0;    // d(x, y)
};

// For a product metric it suffices to compare configurations that differ in
// a single coordinate, since d is additive along coordinate-wise paths.
std::optional<LipschitzViolation> FindLipschitzViolation(
    std::span<const double> values, const WeightedHamming& metric,
    double tolerance = 1e-12);
// Checks every pair; quadratic in the number of configurations.
std::optional<LipschitzViolation> FindLipschitzViolationExhaustive(
    std::span<const double> values, const WeightedHamming& metric,
    double tolerance = 1e-12);

// Both sides of d_w(prod mu_i, prod nu_i) = (1/n) sum_i w_i d(mu_i, nu_i):
// lhs by a transport solve on the product space, rhs coordinate-wise.
struct ProductIdentity {
  double lhs = 0.0;
  double rhs = 0.0;
};
ProductIdentity ProductCouplingIdentity(const StateSpace& base,
                                        std::span<const std::vector<double>> mus,
                                        std::span<const std::vector<double>> nus,
                                        std::span<const double> weights);

}  // namespace treeconc

#endif  // TREECONC_TRANSPORT_H_

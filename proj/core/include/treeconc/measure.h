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

#ifndef TREECONC_MEASURE_H_
#define TREECONC_MEASURE_H_

#include <cstdint>
#include <span>
#include <vector>

namespace treeconc {

// Finite metric state space {0, ..., size-1} with diameter at most 1.
class StateSpace {
 public:
  // Discrete metric: d(x, y) = 1 for x != y.
  static StateSpace Discrete(int size);
  // Row-major size x size metric. Validates symmetry, zero diagonal,
  // positivity off the diagonal, entries <= 1 and the triangle inequality.
  StateSpace(int size, std::vector<double> metric);

  int size() const { return size_; }
  double distance(int x, int y) const {
    return metric_[static_cast<std::size_t>(x) * size_ + y];
  }
  std::span<const double> metric() const { return metric_; }
  bool is_discrete() const;

  friend bool operator==(const StateSpace&, const StateSpace&) = default;

 private:
  int size_;
  std::vector<double> metric_;
};

// A configuration assigns a state to each of n coordinates. Ranks enumerate
// the |H|^n configurations with coordinate 0 as the most significant digit,
// so for two binary coordinates ranks 0..3 are 00, 01, 10, 11.
using Configuration = std::vector<std::uint8_t>;
using ConfigurationRank = std::uint64_t;

// Largest configuration space handled by enumeration.
inline constexpr std::uint64_t kMaxConfigurations = std::uint64_t{1} << 20;

// |H|^n, throwing std::length_error when it exceeds `limit`.
std::uint64_t ConfigurationCount(int states, int n,
                                 std::uint64_t limit = kMaxConfigurations);
Configuration DecodeConfiguration(ConfigurationRank rank, int states, int n);
ConfigurationRank EncodeConfiguration(std::span<const std::uint8_t> config,
                                      int states);

// Explicit probability vector over all configurations of n coordinates.
class ExactMeasure {
 public:
  // Validates nonnegativity and total mass 1 within 1e-10.
  ExactMeasure(StateSpace space, int n, std::vector<double> probs);

  // Point mass at one configuration.
  static ExactMeasure PointMass(StateSpace space, int n, ConfigurationRank at);
  // Independent product of per-coordinate distributions.
  static ExactMeasure Product(StateSpace space,
                              std::span<const std::vector<double>> marginals);

  const StateSpace& space() const { return space_; }
  int n() const { return n_; }
  std::span<const double> probs() const { return probs_; }
  double operator[](ConfigurationRank r) const { return probs_[r]; }
  std::size_t num_configurations() const { return probs_.size(); }

  // Marginal distribution of coordinate v.
  std::vector<double> Marginal(int v) const;
  // Expectation of a function tabulated over configuration ranks.
  double Expectation(std::span<const double> values) const;

 private:
  StateSpace space_;
  int n_;
  std::vector<double> probs_;
};

}  // namespace treeconc

#endif  // TREECONC_MEASURE_H_

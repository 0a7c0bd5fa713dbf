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

#include "treeconc/measure.h"

#include <cmath>
#include <stdexcept>
#include <string>

namespace treeconc {

StateSpace StateSpace::Discrete(int size) {
  if (size < 2) throw std::invalid_argument("state space needs at least 2 states");
  std::vector<double> metric(static_cast<std::size_t>(size) * size, 1.0);
  for (int x = 0; x < size; ++x) metric[static_cast<std::size_t>(x) * size + x] = 0.0;
  return StateSpace(size, std::move(metric));
}

StateSpace::StateSpace(int size, std::vector<double> metric)
    : size_(size), metric_(std::move(metric)) {
  if (size_ < 2) throw std::invalid_argument("state space needs at least 2 states");
  if (metric_.size() != static_cast<std::size_t>(size_) * size_) {
    throw std::invalid_argument("metric must be a size x size matrix");
  }
  constexpr double kTol = 1e-12;
  for (int x = 0; x < size_; ++x) {
    if (distance(x, x) != 0.0) {
      throw std::invalid_argument("metric diagonal must be zero at state " +
                                  std::to_string(x));
    }
    for (int y = 0; y < size_; ++y) {
      const double d = distance(x, y);
      if (x != y && !(d > 0.0)) {
        throw std::invalid_argument("metric must be positive off the diagonal (" +
                                    std::to_string(x) + ", " + std::to_string(y) + ")");
      }
      if (d > 1.0 + kTol) {
        throw std::invalid_argument("metric diameter exceeds 1 at (" +
                                    std::to_string(x) + ", " + std::to_string(y) + ")");
      }
      if (std::abs(d - distance(y, x)) > kTol) {
        throw std::invalid_argument("metric is not symmetric at (" +
                                    std::to_string(x) + ", " + std::to_string(y) + ")");
      }
      for (int z = 0; z < size_; ++z) {
        if (d > distance(x, z) + distance(z, y) + kTol) {
          throw std::invalid_argument("metric violates the triangle inequality at (" +
                                      std::to_string(x) + ", " + std::to_string(y) +
                                      ") via " + std::to_string(z));
        }
      }
    }
  }
}

bool StateSpace::is_discrete() const {
  for (int x = 0; x < size_; ++x) {
    for (int y = 0; y < size_; ++y) {
      if (x != y && distance(x, y) != 1.0) return false;
    }
  }
  return true;
}

std::uint64_t ConfigurationCount(int states, int n, std::uint64_t limit) {
  if (states < 1 || n < 0) throw std::invalid_argument("bad configuration space");
  std::uint64_t count = 1;
  for (int i = 0; i < n; ++i) {
    if (count > limit / static_cast<std::uint64_t>(states)) {
      throw std::length_error("configuration space " + std::to_string(states) + "^" +
                              std::to_string(n) + " exceeds the enumeration budget of " +
                              std::to_string(limit) + " configurations");
    }
    count *= static_cast<std::uint64_t>(states);
  }
  return count;
}

Configuration DecodeConfiguration(ConfigurationRank rank, int states, int n) {
  Configuration config(static_cast<std::size_t>(n));
  for (int v = n - 1; v >= 0; --v) {
    config[v] = static_cast<std::uint8_t>(rank % static_cast<std::uint64_t>(states));
    rank /= static_cast<std::uint64_t>(states);
  }
  return config;
}

ConfigurationRank EncodeConfiguration(std::span<const std::uint8_t> config, int states) {
  ConfigurationRank rank = 0;
  for (std::uint8_t x : config) rank = rank * static_cast<std::uint64_t>(states) + x;
  return rank;
}

ExactMeasure::ExactMeasure(StateSpace space, int n, std::vector<double> probs)
    : space_(std::move(space)), n_(n), probs_(std::move(probs)) {
  const std::uint64_t count = ConfigurationCount(space_.size(), n_);
  if (probs_.size() != count) {
    throw std::invalid_argument("measure has " + std::to_string(probs_.size()) +
                                " entries, expected " + std::to_string(count));
  }
  double total = 0.0;
  for (std::size_t r = 0; r < probs_.size(); ++r) {
    if (!(probs_[r] >= 0.0)) {
      throw std::invalid_argument("negative probability at rank " + std::to_string(r));
    }
    total += probs_[r];
  }
  if (std::abs(total - 1.0) > 1e-10) {
    throw std::invalid_argument("measure mass is " + std::to_string(total) +
                                ", expected 1");
  }
}

ExactMeasure ExactMeasure::PointMass(StateSpace space, int n, ConfigurationRank at) {
  std::vector<double> probs(ConfigurationCount(space.size(), n), 0.0);
  if (at >= probs.size()) throw std::out_of_range("point mass rank out of range");
  probs[at] = 1.0;
  return ExactMeasure(std::move(space), n, std::move(probs));
}

ExactMeasure ExactMeasure::Product(StateSpace space,
                                   std::span<const std::vector<double>> marginals) {
  const int n = static_cast<int>(marginals.size());
  const int h = space.size();
  for (const auto& m : marginals) {
    if (m.size() != static_cast<std::size_t>(h)) {
      throw std::invalid_argument("marginal length does not match the state space");
    }
  }
  std::vector<double> probs(ConfigurationCount(h, n));
  for (std::size_t r = 0; r < probs.size(); ++r) {
    const Configuration c = DecodeConfiguration(r, h, n);
    double p = 1.0;
    for (int v = 0; v < n; ++v) p *= marginals[v][c[v]];
    probs[r] = p;
  }
  return ExactMeasure(std::move(space), n, std::move(probs));
}

std::vector<double> ExactMeasure::Marginal(int v) const {
  if (v < 0 || v >= n_) throw std::out_of_range("coordinate out of range");
  const int h = space_.size();
  std::uint64_t stride = 1;
  for (int u = n_ - 1; u > v; --u) stride *= static_cast<std::uint64_t>(h);
  std::vector<double> out(h, 0.0);
  for (std::size_t r = 0; r < probs_.size(); ++r) {
    out[(r / stride) % static_cast<std::uint64_t>(h)] += probs_[r];
  }
  return out;
}

double ExactMeasure::Expectation(std::span<const double> values) const {
  if (values.size() != probs_.size()) {
    throw std::invalid_argument("function table does not match the measure size");
  }
  double s = 0.0;
  for (std::size_t r = 0; r < probs_.size(); ++r) s += probs_[r] * values[r];
  return s;
}

}  // namespace treeconc

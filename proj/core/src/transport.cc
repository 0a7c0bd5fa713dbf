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

#include "treeconc/transport.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "treeconc/min_cost_flow.h"

namespace treeconc {

WeightedHamming::WeightedHamming(StateSpace base, int n)
    : WeightedHamming(std::move(base), std::vector<double>(std::max(n, 0), 1.0)) {
  if (n < 1) throw std::invalid_argument("WeightedHamming: need n >= 1");
}

WeightedHamming::WeightedHamming(StateSpace base, std::vector<double> weights)
    : base_(std::move(base)), weights_(std::move(weights)) {
  if (weights_.empty()) throw std::invalid_argument("WeightedHamming: no coordinates");
  for (std::size_t i = 0; i < weights_.size(); ++i) {
    if (!(weights_[i] > 0.0) || !std::isfinite(weights_[i])) {
      throw std::invalid_argument("WeightedHamming: weight " + std::to_string(i) +
                                  " must be positive");
    }
  }
}

double WeightedHamming::Distance(std::span<const std::uint8_t> x,
                                 std::span<const std::uint8_t> y) const {
  double s = 0.0;
  for (std::size_t i = 0; i < weights_.size(); ++i) {
    s += weights_[i] * base_.distance(x[i], y[i]);
  }
  return s / static_cast<double>(weights_.size());
}

double WeightedHamming::Distance(ConfigurationRank x, ConfigurationRank y) const {
  return Distance(DecodeConfiguration(x, base_.size(), n()),
                  DecodeConfiguration(y, base_.size(), n()));
}

namespace {

struct Support {
  std::vector<ConfigurationRank> ranks;
  std::vector<double> mass;
  double dropped = 0.0;
};

Support ExtractSupport(const ExactMeasure& m) {
  Support s;
  double kept = 0.0;
  for (std::size_t r = 0; r < m.num_configurations(); ++r) {
    if (m[r] >= kSupportCutoff) {
      s.ranks.push_back(r);
      s.mass.push_back(m[r]);
      kept += m[r];
    } else {
      s.dropped += m[r];
    }
  }
  for (double& p : s.mass) p /= kept;
  return s;
}

// Rescales `mass` so both sides sum to the same double total, which the
// solver requires up to 1e-12.
void Balance(std::vector<double>& a, std::vector<double>& b) {
  double sa = 0.0, sb = 0.0;
  for (double x : a) sa += x;
  for (double x : b) sb += x;
  for (double& x : b) x *= sa / sb;
}

}  // namespace

TransportResult Wasserstein(const ExactMeasure& mu, const ExactMeasure& nu,
                            const WeightedHamming& metric) {
  if (!(mu.space() == nu.space()) || mu.n() != nu.n()) {
    throw std::invalid_argument("Wasserstein: measures live on different spaces");
  }
  if (!(metric.base() == mu.space()) || metric.n() != mu.n()) {
    throw std::invalid_argument("Wasserstein: metric does not match the measures");
  }
  Support src = ExtractSupport(mu);
  Support dst = ExtractSupport(nu);
  if (src.ranks.size() + dst.ranks.size() > kMaxTransportSupport) {
    throw std::length_error("Wasserstein: combined support " +
                            std::to_string(src.ranks.size() + dst.ranks.size()) +
                            " exceeds " + std::to_string(kMaxTransportSupport));
  }
  Balance(src.mass, dst.mass);

  const int h = mu.space().size();
  const int n = mu.n();
  const std::size_t num_s = src.ranks.size(), num_t = dst.ranks.size();
  std::vector<Configuration> dst_configs(num_t);
  for (std::size_t j = 0; j < num_t; ++j) {
    dst_configs[j] = DecodeConfiguration(dst.ranks[j], h, n);
  }
  std::vector<double> dist(num_s * num_t);
  std::vector<std::int64_t> cost(num_s * num_t);
  for (std::size_t i = 0; i < num_s; ++i) {
    const Configuration x = DecodeConfiguration(src.ranks[i], h, n);
    for (std::size_t j = 0; j < num_t; ++j) {
      const double d = metric.Distance(x, dst_configs[j]);
      dist[i * num_t + j] = d;
      cost[i * num_t + j] = std::llround(d * kCostScale);
    }
  }

  const TransportationSolution sol = SolveTransportation(src.mass, dst.mass, cost);

  TransportResult result;
  TransportPlan& plan = result.plan;
  plan.source_support = std::move(src.ranks);
  plan.target_support = std::move(dst.ranks);
  plan.dropped_source_mass = src.dropped;
  plan.dropped_target_mass = dst.dropped;
  plan.coupling = sol.flow;

  std::vector<double> row(num_s, 0.0), col(num_t, 0.0);
  for (std::size_t i = 0; i < num_s; ++i) {
    const double u = static_cast<double>(sol.source_potential[i]) / kCostScale;
    plan.dual_objective += u * src.mass[i];
    for (std::size_t j = 0; j < num_t; ++j) {
      const double f = sol.flow[i * num_t + j];
      const double d = dist[i * num_t + j];
      const double v = static_cast<double>(sol.sink_potential[j]) / kCostScale;
      plan.cost += f * d;
      row[i] += f;
      col[j] += f;
      plan.max_dual_violation = std::max(plan.max_dual_violation, u + v - d);
      if (f > 0.0) {
        plan.max_slackness_gap = std::max(plan.max_slackness_gap, std::abs(d - u - v));
      }
    }
  }
  for (std::size_t j = 0; j < num_t; ++j) {
    plan.dual_objective +=
        static_cast<double>(sol.sink_potential[j]) / kCostScale * dst.mass[j];
  }

  constexpr double kTol = 1e-9;
  for (std::size_t i = 0; i < num_s; ++i) {
    if (std::abs(row[i] - src.mass[i]) > kTol) {
      throw std::logic_error("Wasserstein: coupling row " + std::to_string(i) +
                             " does not match mu");
    }
  }
  for (std::size_t j = 0; j < num_t; ++j) {
    if (std::abs(col[j] - dst.mass[j]) > kTol) {
      throw std::logic_error("Wasserstein: coupling column " + std::to_string(j) +
                             " does not match nu");
    }
  }
  if (plan.max_dual_violation > kTol || plan.max_slackness_gap > kTol) {
    throw std::logic_error("Wasserstein: optimality certificate failed (dual " +
                           std::to_string(plan.max_dual_violation) + ", slackness " +
                           std::to_string(plan.max_slackness_gap) + ")");
  }
  result.distance = plan.cost;
  return result;
}

double TotalVariation(std::span<const double> mu, std::span<const double> nu) {
  if (mu.size() != nu.size()) throw std::invalid_argument("TotalVariation: size mismatch");
  double s = 0.0;
  for (std::size_t i = 0; i < mu.size(); ++i) s += std::abs(mu[i] - nu[i]);
  return 0.5 * s;
}

double BaseWasserstein(const StateSpace& space, std::span<const double> mu,
                       std::span<const double> nu) {
  const std::size_t h = static_cast<std::size_t>(space.size());
  if (mu.size() != h || nu.size() != h) {
    throw std::invalid_argument("BaseWasserstein: distribution length mismatch");
  }
  std::vector<double> a(mu.begin(), mu.end()), b(nu.begin(), nu.end());
  Balance(a, b);
  std::vector<std::int64_t> cost(h * h);
  for (std::size_t x = 0; x < h; ++x) {
    for (std::size_t y = 0; y < h; ++y) {
      cost[x * h + y] = std::llround(space.distance(static_cast<int>(x),
                                                    static_cast<int>(y)) *
                                     kCostScale);
    }
  }
  const TransportationSolution sol = SolveTransportation(a, b, cost);
  double total = 0.0;
  for (std::size_t x = 0; x < h; ++x) {
    for (std::size_t y = 0; y < h; ++y) {
      total += sol.flow[x * h + y] *
               space.distance(static_cast<int>(x), static_cast<int>(y));
    }
  }
  return total;
}

double RelativeEntropy(const ExactMeasure& mu, const ExactMeasure& nu) {
  if (!(mu.space() == nu.space()) || mu.n() != nu.n()) {
    throw std::invalid_argument("RelativeEntropy: measures live on different spaces");
  }
  double total = 0.0;
  for (std::size_t r = 0; r < mu.num_configurations(); ++r) {
    const double p = mu[r];
    if (p == 0.0) continue;
    const double q = nu[r];
    if (q == 0.0) return std::numeric_limits<double>::infinity();
    total += p * std::log(p / q);
  }
  // Rounding can push the sum of an exact zero slightly negative.
  return std::max(total, 0.0);
}

std::vector<double> McShaneExtension(std::span<const ConfigurationRank> points,
                                     std::span<const double> values,
                                     const WeightedHamming& metric) {
  if (points.empty() || points.size() != values.size()) {
    throw std::invalid_argument("McShaneExtension: need matching, nonempty points and values");
  }
  const int h = metric.base().size();
  const int n = metric.n();
  const std::uint64_t count = ConfigurationCount(h, n);
  std::vector<Configuration> anchors;
  for (ConfigurationRank p : points) {
    if (p >= count) throw std::out_of_range("McShaneExtension: point out of range");
    anchors.push_back(DecodeConfiguration(p, h, n));
  }
  std::vector<double> out(count);
  for (std::uint64_t r = 0; r < count; ++r) {
    const Configuration x = DecodeConfiguration(r, h, n);
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < anchors.size(); ++i) {
      best = std::min(best, values[i] + metric.Distance(x, anchors[i]));
    }
    out[r] = best;
  }
  return out;
}

std::optional<LipschitzViolation> FindLipschitzViolation(std::span<const double> values,
                                                         const WeightedHamming& metric,
                                                         double tolerance) {
  const int h = metric.base().size();
  const int n = metric.n();
  const std::uint64_t count = ConfigurationCount(h, n);
  if (values.size() != count) {
    throw std::invalid_argument("FindLipschitzViolation: table size mismatch");
  }
  std::uint64_t stride = count;
  for (int v = 0; v < n; ++v) {
    stride /= static_cast<std::uint64_t>(h);
    const double w = metric.weights()[v] / n;
    for (std::uint64_t r = 0; r < count; ++r) {
      const int xv = static_cast<int>((r / stride) % static_cast<std::uint64_t>(h));
      for (int y = xv + 1; y < h; ++y) {
        const std::uint64_t s = r + static_cast<std::uint64_t>(y - xv) * stride;
        const double d = w * metric.base().distance(xv, y);
        const double diff = std::abs(values[r] - values[s]);
        if (diff > d + tolerance) return LipschitzViolation{r, s, diff, d};
      }
    }
  }
  return std::nullopt;
}

std::optional<LipschitzViolation> FindLipschitzViolationExhaustive(
    std::span<const double> values, const WeightedHamming& metric, double tolerance) {
  const int h = metric.base().size();
  const int n = metric.n();
  const std::uint64_t count = ConfigurationCount(h, n);
  if (values.size() != count) {
    throw std::invalid_argument("FindLipschitzViolationExhaustive: table size mismatch");
  }
  std::vector<Configuration> configs(count);
  for (std::uint64_t r = 0; r < count; ++r) configs[r] = DecodeConfiguration(r, h, n);
  for (std::uint64_t x = 0; x < count; ++x) {
    for (std::uint64_t y = x + 1; y < count; ++y) {
      const double d = metric.Distance(configs[x], configs[y]);
      const double diff = std::abs(values[x] - values[y]);
      if (diff > d + tolerance) return LipschitzViolation{x, y, diff, d};
    }
  }
  return std::nullopt;
}

ProductIdentity ProductCouplingIdentity(const StateSpace& base,
                                        std::span<const std::vector<double>> mus,
                                        std::span<const std::vector<double>> nus,
                                        std::span<const double> weights) {
  if (mus.size() != nus.size() || mus.size() != weights.size() || mus.empty()) {
    throw std::invalid_argument("ProductCouplingIdentity: inconsistent coordinate counts");
  }
  const WeightedHamming metric(base, std::vector<double>(weights.begin(), weights.end()));
  ProductIdentity out;
  out.lhs = Wasserstein(ExactMeasure::Product(base, mus),
                        ExactMeasure::Product(base, nus), metric)
                .distance;
  for (std::size_t i = 0; i < mus.size(); ++i) {
    out.rhs += weights[i] * BaseWasserstein(base, mus[i], nus[i]);
  }
  out.rhs /= static_cast<double>(mus.size());
  return out;
}

}  // namespace treeconc

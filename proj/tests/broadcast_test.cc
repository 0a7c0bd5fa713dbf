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

#include "treeconc/broadcast.h"

#include <gtest/gtest.h>

#include <cmath>
#include <cstdlib>
#include <memory>
#include <random>
#include <stdexcept>

#include "oracles.h"
#include "treeconc/corpus.h"
#include "treeconc/delta.h"

namespace treeconc {
namespace {

using testing::Gen;

const StateSpace kLine3(3, {0, .5, 1, .5, 0, .5, 1, .5, 0});

// Product formula evaluated configuration by configuration.
std::vector<double> EnumeratedProbabilities(const MarkovTreeModel& model) {
  const int h = model.states();
  const std::uint64_t count = ConfigurationCount(h, model.n());
  std::vector<double> probs(count);
  for (ConfigurationRank r = 0; r < count; ++r) {
    const Configuration x = DecodeConfiguration(r, h, model.n());
    double p = model.root_dist()[x[0]];
    for (VertexId v = 1; v < model.n(); ++v) p *= model.q(v, x[model.tree().parent(v)], x[v]);
    probs[r] = p;
  }
  return probs;
}

std::vector<double> CountsFromEnumeration(const MarkovTreeModel& model) {
  const std::vector<double> probs = EnumeratedProbabilities(model);
  std::vector<double> counts(model.n() + 1, 0.0);
  for (ConfigurationRank r = 0; r < probs.size(); ++r) counts[std::popcount(r)] += probs[r];
  return counts;
}

MarkovTreeModel RandomThreeStateModel(std::shared_ptr<const RootedTree> tree,
                                      std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.05, 1.0);
  auto row = [&](double* out) {
    double s = 0.0;
    for (int i = 0; i < 3; ++i) s += out[i] = u(rng);
    for (int i = 0; i < 3; ++i) out[i] /= s;
  };
  std::vector<double> root(3);
  row(root.data());
  std::vector<double> kernels(static_cast<std::size_t>(tree->size()) * 9);
  for (std::size_t v = 0; v < static_cast<std::size_t>(tree->size()); ++v) {
    for (int x = 0; x < 3; ++x) row(&kernels[v * 9 + x * 3]);
  }
  return MarkovTreeModel(std::move(tree), kLine3, std::move(root), std::move(kernels));
}

TEST(IsingModelTest, RejectsFlipProbabilityOutsideRange) {
  const RootedTree t = Gen("path:1");
  for (double p : {0.0, -0.1, 0.5000001, 1.0, std::nan("")}) {
    EXPECT_THROW(IsingModel(t, p), std::invalid_argument) << p;
  }
  EXPECT_NO_THROW(IsingModel(t, 0.5));
  EXPECT_NO_THROW(IsingModel(t, 1e-9));
}

TEST(MarkovTreeModelTest, RejectsNonStochasticInput) {
  auto t = std::make_shared<const RootedTree>(Gen("path:1"));
  const StateSpace s = StateSpace::Discrete(2);
  EXPECT_THROW(MarkovTreeModel::Homogeneous(t, s, {0.5, 0.5}, std::vector<double>{0.7, 0.2, 0.5, 0.5}),
               std::invalid_argument);
  EXPECT_THROW(MarkovTreeModel::Homogeneous(t, s, {0.6, 0.5}, std::vector<double>{1, 0, 0, 1}),
               std::invalid_argument);
  EXPECT_THROW(MarkovTreeModel::Homogeneous(t, s, {1.1, -0.1}, std::vector<double>{1, 0, 0, 1}),
               std::invalid_argument);
  EXPECT_THROW(MarkovTreeModel(t, s, {0.5, 0.5}, std::vector<double>(4, 0.5)), std::invalid_argument);
}

TEST(KernelLipschitzTest, Examples) {
  EXPECT_NEAR(KernelLipschitz(IsingModel(Gen("path:3"), 0.25).model()), 0.5, 1e-12);
  EXPECT_NEAR(KernelLipschitz(IsingModel(Gen("path:3"), 0.5).model()), 0.0, 1e-12);
  auto t = std::make_shared<const RootedTree>(Gen("dary:2:2"));
  const std::vector<double> same_rows{0.2, 0.5, 0.3, 0.2, 0.5, 0.3, 0.2, 0.5, 0.3};
  EXPECT_NEAR(KernelLipschitz(MarkovTreeModel::Homogeneous(t, kLine3, {1, 0, 0}, same_rows)), 0.0,
              1e-15);
  EXPECT_EQ(KernelLipschitz(IsingModel(Gen("path:0"), 0.1).model()), 0.0);
}

TEST(KernelLipschitzTest, IsingConstantIsOneMinusTwoP) {
  for (double p : {0.01, 0.1, 0.2, 0.3333, 0.45, 0.5}) {
    EXPECT_NEAR(KernelLipschitz(IsingModel(Gen("dary:3:2"), p).model()), 1 - 2 * p, 1e-12);
  }
}

TEST(KernelLipschitzTest, LineMetricUsesOneDimensionalTransport) {
  // Shift kernel on {0, 1, 2}: state x moves to min(x + 1, 2).
  auto t = std::make_shared<const RootedTree>(Gen("path:1"));
  const std::vector<double> shift{0, 1, 0, 0, 0, 1, 0, 0, 1};
  // Rows 0 and 1 move apart by 1/2 at distance 1/2; rows 1 and 2 coincide.
  EXPECT_NEAR(KernelLipschitz(MarkovTreeModel::Homogeneous(t, kLine3, {1, 0, 0}, shift)), 1.0,
              1e-12);
  const std::vector<double> blur{0.5, 0.5, 0, 0.25, 0.5, 0.25, 0, 0.5, 0.5};
  // Row 0 vs row 2: mean shift of 1/2 at distance 1.
  EXPECT_NEAR(KernelLipschitz(MarkovTreeModel::Homogeneous(t, kLine3, {1, 0, 0}, blur)), 0.5,
              1e-12);
}

TEST(IsingStepMatrixTest, Examples) {
  const auto two = IsingStepMatrix(0.25, 2);
  EXPECT_NEAR(two[0], 0.625, 1e-15);
  EXPECT_NEAR(two[1], 0.375, 1e-15);
  EXPECT_NEAR(two[2], 0.375, 1e-15);
  EXPECT_NEAR(two[3], 0.625, 1e-15);
  const auto zero = IsingStepMatrix(0.3, 0);
  EXPECT_EQ(zero[0], 1.0);
  EXPECT_EQ(zero[1], 0.0);
  EXPECT_EQ(zero[3], 1.0);
  for (double x : IsingStepMatrix(0.5, 1)) EXPECT_EQ(x, 0.5);
  EXPECT_THROW(IsingStepMatrix(0.25, -1), std::invalid_argument);
}

TEST(IsingStepMatrixTest, MatchesRepeatedMultiplication) {
  for (double p : {0.05, 0.2, 0.4}) {
    std::array<double, 4> m{1, 0, 0, 1};
    for (int k = 0; k <= 30; ++k) {
      const auto closed = IsingStepMatrix(p, k);
      for (int i = 0; i < 4; ++i) EXPECT_NEAR(closed[i], m[i], 1e-12) << p << " " << k;
      const std::array<double, 4> next{m[0] * (1 - p) + m[1] * p, m[0] * p + m[1] * (1 - p),
                                       m[2] * (1 - p) + m[3] * p, m[2] * p + m[3] * (1 - p)};
      m = next;
    }
  }
}

TEST(ExactMeasureTest, Examples) {
  const ExactMeasure single = ComputeExactMeasure(IsingModel(Gen("path:0"), 0.3).model());
  EXPECT_EQ(single[0], 0.5);
  EXPECT_EQ(single[1], 0.5);
  const ExactMeasure edge = ComputeExactMeasure(IsingModel(Gen("path:1"), 0.25).model());
  EXPECT_NEAR(edge[0], 0.375, 1e-15);
  EXPECT_NEAR(edge[1], 0.125, 1e-15);
  EXPECT_NEAR(edge[2], 0.125, 1e-15);
  EXPECT_NEAR(edge[3], 0.375, 1e-15);
  const ExactMeasure flat = ComputeExactMeasure(IsingModel(Gen("dary:2:2"), 0.5).model());
  for (double p : flat.probs()) EXPECT_NEAR(p, 1.0 / 128, 1e-17);
}

TEST(ExactMeasureTest, GuardsConfigurationCount) {
  EXPECT_THROW(ComputeExactMeasure(IsingModel(Gen("path:20"), 0.25).model()), std::length_error);
}

TEST(ExactMeasureTest, MatchesProductFormulaAndIsStationary) {
  std::mt19937_64 rng(11);
  for (const RootedTree& t : RandomTrees(15, 9, 5)) {
    auto shared = std::make_shared<const RootedTree>(t);
    const IsingModel ising(shared, 0.1 + 0.02 * t.size());
    const ExactMeasure m = ComputeExactMeasure(ising.model());
    const std::vector<double> oracle = EnumeratedProbabilities(ising.model());
    double total = 0.0;
    for (std::size_t r = 0; r < oracle.size(); ++r) {
      EXPECT_NEAR(m[r], oracle[r], 1e-15);
      total += m[r];
    }
    EXPECT_NEAR(total, 1.0, 1e-10);
    for (VertexId v = 0; v < t.size(); ++v) {
      const auto marginal = m.Marginal(v);
      EXPECT_NEAR(marginal[0], 0.5, 1e-12);
      EXPECT_NEAR(marginal[1], 0.5, 1e-12);
    }
    if (t.size() <= 7) {
      const MarkovTreeModel general = RandomThreeStateModel(shared, rng);
      const ExactMeasure g = ComputeExactMeasure(general);
      const std::vector<double> g_oracle = EnumeratedProbabilities(general);
      for (std::size_t r = 0; r < g_oracle.size(); ++r) EXPECT_NEAR(g[r], g_oracle[r], 1e-15);
    }
  }
}

TEST(VertexMarginalsTest, MatchExactMeasureMarginals) {
  std::mt19937_64 rng(12);
  for (const RootedTree& t : RandomTrees(10, 7, 6)) {
    const MarkovTreeModel model = RandomThreeStateModel(std::make_shared<const RootedTree>(t), rng);
    const ExactMeasure m = ComputeExactMeasure(model);
    const std::vector<double> marginals = VertexMarginals(model);
    for (VertexId v = 0; v < t.size(); ++v) {
      const auto oracle = m.Marginal(v);
      for (int x = 0; x < 3; ++x) EXPECT_NEAR(marginals[v * 3 + x], oracle[x], 1e-13);
    }
  }
}

TEST(MagnetizationDistributionTest, Examples) {
  const auto edge = MagnetizationDistribution(IsingModel(Gen("path:1"), 0.25));
  ASSERT_EQ(edge.size(), 3u);
  EXPECT_NEAR(edge[0], 0.375, 1e-15);
  EXPECT_NEAR(edge[1], 0.25, 1e-15);
  EXPECT_NEAR(edge[2], 0.375, 1e-15);
  const auto single = MagnetizationDistribution(IsingModel(Gen("path:0"), 0.2));
  EXPECT_EQ(single, (std::vector<double>{0.5, 0.5}));
  const auto fair = MagnetizationDistribution(IsingModel(Gen("dary:3:2"), 0.5));
  double binom = 1.0;
  for (int m = 0; m <= 13; ++m) {
    EXPECT_NEAR(fair[m], binom / 8192.0, 1e-15) << m;
    binom = binom * (13 - m) / (m + 1);
  }
}

TEST(MagnetizationDistributionTest, AgreesWithEnumerationAndIsSymmetric) {
  for (const CorpusTree& entry : VerificationCorpus(3)) {
    if (entry.tree.size() > 12) continue;
    for (double p : {0.05, 0.25, 0.5}) {
      const IsingModel ising(entry.tree, p);
      const auto dp = MagnetizationDistribution(ising);
      const auto oracle = CountsFromEnumeration(ising.model());
      double mean = 0.0;
      for (std::size_t m = 0; m < dp.size(); ++m) {
        EXPECT_NEAR(dp[m], oracle[m], 1e-10 * std::max(1.0, oracle[m])) << entry.name;
        EXPECT_EQ(dp[m], dp[dp.size() - 1 - m]) << entry.name;
        mean += m * dp[m];
      }
      EXPECT_NEAR(mean, entry.tree.size() / 2.0, 1e-12);
    }
  }
}

TEST(MagnetizationDistributionTest, GeneralBinaryModelMatchesEnumeration) {
  std::mt19937_64 rng(13);
  std::uniform_real_distribution<double> u(0.05, 0.95);
  for (const RootedTree& t : RandomTrees(10, 10, 7)) {
    const double a = u(rng), c = u(rng), r = u(rng);
    const MarkovTreeModel model = MarkovTreeModel::Homogeneous(
        std::make_shared<const RootedTree>(t), StateSpace::Discrete(2), {r, 1 - r},
        std::vector<double>{a, 1 - a, c, 1 - c});
    const auto dp = MagnetizationDistribution(model);
    const auto oracle = CountsFromEnumeration(model);
    for (std::size_t m = 0; m < dp.size(); ++m) EXPECT_NEAR(dp[m], oracle[m], 1e-14);
  }
  const MarkovTreeModel three = RandomThreeStateModel(std::make_shared<const RootedTree>(Gen("path:2")), rng);
  EXPECT_THROW(MagnetizationDistribution(three), std::invalid_argument);
}

TEST(MagnetizationDistributionTest, HandlesLargeTrees) {
  const auto dist = MagnetizationDistribution(IsingModel(Gen("dary:2:12"), 0.2));
  double total = 0.0;
  for (double c : dist) total += c;
  EXPECT_NEAR(total, 1.0, 1e-10);
  EXPECT_THROW(MagnetizationDistribution(IsingModel(Gen("path:20000"), 0.2)), std::length_error);
}

TEST(ExpMomentTest, Examples) {
  const IsingModel single(Gen("path:0"), 0.25);
  EXPECT_NEAR(ExpMoment(single.model(), MagnetizationValues(1), 2.0), std::cosh(1.0), 1e-14);
  const IsingModel tree(Gen("dary:2:2"), 0.3);
  EXPECT_EQ(ExpMoment(tree.model(), MagnetizationValues(7), 0.0), 1.0);
  const IsingModel fair(Gen("dary:2:2"), 0.5);
  for (double lambda : {-2.0, -0.5, 1.0, 2.0}) {
    EXPECT_NEAR(ExpMoment(fair.model(), MagnetizationValues(7), lambda),
                std::pow(std::cosh(lambda / 2), 7), 1e-12);
  }
}

TEST(ExpMomentTest, MagnetizationEqualsGeneratingFunction) {
  const IsingModel ising(Gen("threeone:3"), 0.15);
  const auto pgf = MagnetizationDistribution(ising);
  const int n = ising.n();
  for (double lambda : {-2.0, -1.0, 0.5, 2.0}) {
    double value = 0.0;
    for (int m = 0; m <= n; ++m) value += pgf[m] * std::exp(lambda * m);
    value *= std::exp(-lambda * n / 2.0);
    EXPECT_NEAR(ExpMoment(ising.model(), MagnetizationValues(n), lambda) / value, 1.0, 1e-12);
  }
}

TEST(ExpMomentTest, AgreesWithEnumerationOnLinearFunctions) {
  std::mt19937_64 rng(14);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (const RootedTree& t : RandomTrees(20, 10, 8)) {
    auto shared = std::make_shared<const RootedTree>(t);
    const int n = t.size();
    const bool three = t.size() <= 6;
    const MarkovTreeModel model = three ? RandomThreeStateModel(shared, rng)
                                        : IsingModel(shared, 0.05 + 0.04 * n).model();
    const int h = model.states();
    std::vector<double> values(static_cast<std::size_t>(n) * h);
    for (int v = 0; v < n; ++v) {
      // 1-Lipschitz for the base metric: c(x) = s * position + offset.
      const double slope = u(rng);
      const double offset = 3 * u(rng);
      for (int x = 0; x < h; ++x) {
        values[v * h + x] = offset + slope * (h == 3 ? 0.5 * x : x);
      }
    }
    const ExactMeasure m = ComputeExactMeasure(model);
    std::vector<double> table(m.num_configurations());
    for (ConfigurationRank r = 0; r < table.size(); ++r) {
      const Configuration x = DecodeConfiguration(r, h, n);
      double f = 0.0;
      for (int v = 0; v < n; ++v) f += values[v * h + x[v]];
      table[r] = f / n;
    }
    for (double lambda : {-2.0, -1.0, -0.5, 0.0, 0.5, 1.0, 2.0}) {
      const double dp = LogExpMoment(model, values, lambda);
      const double oracle = LogExpMomentFromTable(m, table, lambda);
      EXPECT_NEAR(dp, oracle, 1e-10 * std::max(1.0, std::abs(oracle))) << n << " " << lambda;
    }
  }
}

TEST(ExpMomentTest, RejectsNonLipschitzValues) {
  const IsingModel ising(Gen("path:2"), 0.25);
  std::vector<double> values = MagnetizationValues(3);
  values[3] = 1.5;  // vertex 1 jumps by 1.5 across distance 1
  EXPECT_THROW(ExpMoment(ising.model(), values, 1.0), std::invalid_argument);
  EXPECT_THROW(ExpMoment(ising.model(), std::vector<double>(4, 0.0), 1.0), std::invalid_argument);
}

TEST(SampleTest, DeterministicAndIndependentOfThreadCount) {
  const IsingModel ising(Gen("dary:2:4"), 0.2);
  const char* saved = std::getenv("TREECONC_THREADS");
  const std::string restore = saved ? saved : "";
  setenv("TREECONC_THREADS", "1", 1);
  const auto one = Sample(ising.model(), 5000, 42);
  setenv("TREECONC_THREADS", "4", 1);
  const auto four = Sample(ising.model(), 5000, 42);
  if (saved) {
    setenv("TREECONC_THREADS", restore.c_str(), 1);
  } else {
    unsetenv("TREECONC_THREADS");
  }
  EXPECT_EQ(one, four);
  EXPECT_EQ(Sample(ising.model(), 100, 42), std::vector<Configuration>(one.begin(), one.begin() + 100));
  EXPECT_NE(Sample(ising.model(), 100, 43), std::vector<Configuration>(one.begin(), one.begin() + 100));
  EXPECT_THROW(Sample(ising.model(), 0, 1), std::invalid_argument);
}

TEST(SampleTest, FairCoinMarginals) {
  constexpr int kCount = 100000;
  const IsingModel ising(Gen("dary:2:2"), 0.5);
  const auto samples = Sample(ising.model(), kCount, 1);
  const double sigma = std::sqrt(0.25 / kCount);
  for (VertexId v = 0; v < 7; ++v) {
    int ones = 0;
    for (const auto& x : samples) ones += x[v];
    EXPECT_LE(std::abs(static_cast<double>(ones) / kCount - 0.5), 4 * sigma) << v;
  }
}

TEST(SampleTest, NearDeterministicCopy) {
  const IsingModel ising(Gen("dary:2:3"), 1e-9);
  for (const auto& x : Sample(ising.model(), 10000, 3)) {
    for (auto s : x) ASSERT_EQ(s, x[0]);
  }
}

TEST(SampleTest, SingleEdgeDisagreementRate) {
  constexpr int kCount = 100000;
  const IsingModel ising(Gen("path:1"), 0.25);
  int differ = 0;
  for (const auto& x : Sample(ising.model(), kCount, 9)) differ += x[0] != x[1];
  EXPECT_LE(std::abs(static_cast<double>(differ) / kCount - 0.25),
            4 * std::sqrt(0.25 * 0.75 / kCount));
}

TEST(SampleTest, HistogramMatchesMagnetizationDistribution) {
  constexpr int kCount = 100000;
  const IsingModel ising(Gen("threeone:2"), 0.2);
  const auto exact = MagnetizationDistribution(ising);
  std::vector<int> hist(exact.size(), 0);
  for (const auto& x : Sample(ising.model(), kCount, 17)) {
    int ones = 0;
    for (auto s : x) ones += s;
    ++hist[ones];
  }
  for (std::size_t m = 0; m < exact.size(); ++m) {
    const double sigma = std::sqrt(exact[m] * (1 - exact[m]) / kCount);
    EXPECT_LE(std::abs(static_cast<double>(hist[m]) / kCount - exact[m]), 4 * sigma + 1e-12) << m;
  }
}

TEST(SampleTest, ThreeStateFrequenciesMatchMarginals) {
  constexpr int kCount = 100000;
  std::mt19937_64 rng(15);
  const MarkovTreeModel model = RandomThreeStateModel(std::make_shared<const RootedTree>(Gen("path:3")), rng);
  const auto marginals = VertexMarginals(model);
  std::vector<int> counts(12, 0);
  for (const auto& x : Sample(model, kCount, 5)) {
    for (int v = 0; v < 4; ++v) ++counts[v * 3 + x[v]];
  }
  for (int i = 0; i < 12; ++i) {
    const double p = marginals[i];
    EXPECT_LE(std::abs(static_cast<double>(counts[i]) / kCount - p), 4 * std::sqrt(p * (1 - p) / kCount));
  }
}

TEST(VarianceTest, Examples) {
  const auto edge = VarianceOfMagnetization(IsingModel(Gen("path:1"), 0.25));
  EXPECT_NEAR(edge.formula, 0.1875, 1e-15);
  ASSERT_TRUE(edge.exact.has_value());
  EXPECT_NEAR(*edge.exact, 0.1875, 1e-15);
  const auto fair = VarianceOfMagnetization(IsingModel(Gen("dary:2:3"), 0.5));
  EXPECT_NEAR(fair.formula, 1.0 / 60, 1e-15);
  EXPECT_NEAR(*fair.exact, 1.0 / 60, 1e-14);
  const auto star = VarianceOfMagnetization(IsingModel(Gen("dary:2:1"), 0.25));
  EXPECT_NEAR(star.formula, 5.5 / 36, 1e-15);
  EXPECT_NEAR(*star.exact, 5.5 / 36, 1e-14);
}

TEST(VarianceTest, FormulaMatchesExactDistribution) {
  for (const RootedTree& t : RandomTrees(30, 200, 9)) {
    for (double p : {0.05, 0.1, 0.25, 0.4, 0.5}) {
      const auto var = VarianceOfMagnetization(IsingModel(t, p));
      ASSERT_TRUE(var.exact.has_value());
      EXPECT_NEAR(var.formula, *var.exact, 1e-10);
      const double b = 1 - 2 * p;
      EXPECT_NEAR(var.formula, testing::BfsPairSum(t, b) / (4.0 * t.size() * t.size()), 1e-12);
    }
  }
}

}  // namespace
}  // namespace treeconc

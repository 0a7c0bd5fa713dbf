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

#include "treeconc/verify.h"

#include <cmath>
#include <random>
#include <stdexcept>

#include "treeconc/corpus.h"
#include "treeconc/delta.h"
#include "treeconc/numeric_format.h"
#include "treeconc/spectral.h"
#include "treeconc/transport.h"

namespace treeconc {

void InequalityReport::Record(double slack, const std::string& where) {
  ++instances;
  if (slack < worst_slack || witness.empty()) {
    if (slack < worst_slack) worst_slack = slack;
    witness = where;
  }
  passed = worst_slack >= -kSlackTolerance;
}

void InequalityReport::Merge(const InequalityReport& other) {
  instances += other.instances;
  if (other.worst_slack < worst_slack || witness.empty()) {
    worst_slack = std::min(worst_slack, other.worst_slack);
    witness = other.witness;
  }
  passed = worst_slack >= -kSlackTolerance;
  if (!other.advisory.empty()) {
    if (!advisory.empty()) advisory += "; ";
    advisory += other.advisory;
  }
}

namespace {

InequalityReport Named(const char* name) {
  InequalityReport r;
  r.name = name;
  return r;
}

std::string Join(const std::string& label, const std::string& rest) {
  return label.empty() ? rest : label + " " + rest;
}

double BigDelta(const RootedTree& t, double b) {
  return ComputeDescendantProfile(t, b).big_delta;
}

double OracleDistanceSum(const RootedTree& t, double b) {
  return t.size() <= 2000 ? PairDistanceSumNaive(t, b) : PairDistanceSum(t, b);
}

int CountOnes(ConfigurationRank r, int states, int n) {
  int ones = 0;
  for (int v = 0; v < n; ++v) {
    if (r % static_cast<ConfigurationRank>(states) == 1) ++ones;
    r /= static_cast<ConfigurationRank>(states);
  }
  return ones;
}

}  // namespace

TestFunction MagnetizationFunction(int n) {
  return {"magnetization", MagnetizationValues(n), {}};
}

std::vector<TestFunction> McShaneFunctions(int n, int count, std::uint64_t seed) {
  const WeightedHamming metric(StateSpace::Discrete(2), n);
  const std::uint64_t size = ConfigurationCount(2, n);
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<ConfigurationRank> point(0, size - 1);
  std::uniform_int_distribution<int> anchors(1, 6);
  std::uniform_real_distribution<double> value(0.0, 1.0);
  std::vector<TestFunction> out;
  for (int i = 0; i < count; ++i) {
    const int k = anchors(rng);
    std::vector<ConfigurationRank> points(k);
    std::vector<double> values(k);
    for (int j = 0; j < k; ++j) {
      points[j] = point(rng);
      values[j] = value(rng);
    }
    out.push_back({"mcshane:" + std::to_string(i), {},
                   McShaneExtension(points, values, metric)});
  }
  return out;
}

InequalityReport CheckExpMoment(const MarkovTreeModel& model,
                                std::span<const TestFunction> functions,
                                std::span<const double> lambdas, const std::string& label) {
  InequalityReport report;
  report.name = "exp_moment";
  const double big_delta = BigDelta(model.tree(), KernelLipschitz(model));
  const WeightedHamming metric(model.space(), model.n());
  std::optional<ExactMeasure> nu;
  for (const TestFunction& f : functions) {
    if (f.table.empty()) {
      for (double lambda : lambdas) {
        const double value = ExpMoment(model, f.linear, lambda);
        const double bound = std::exp(lambda * lambda * big_delta * big_delta / 8.0);
        report.Record(bound - value,
                      Join(label, "f=" + f.name + " lambda=" + FormatNumber(lambda)));
      }
      continue;
    }
    if (auto bad = FindLipschitzViolation(f.table, metric)) {
      throw std::invalid_argument("CheckExpMoment: " + f.name +
                                  " is not 1-Lipschitz at configurations " +
                                  std::to_string(bad->x) + " and " + std::to_string(bad->y));
    }
    if (!nu) nu = ComputeExactMeasure(model);
    for (double lambda : lambdas) {
      const double value = std::exp(LogExpMomentFromTable(*nu, f.table, lambda));
      const double bound = std::exp(lambda * lambda * big_delta * big_delta / 8.0);
      report.Record(bound - value,
                    Join(label, "f=" + f.name + " lambda=" + FormatNumber(lambda)));
    }
  }
  return report;
}

std::vector<ExactMeasure> TransportTestMeasures(const ExactMeasure& nu) {
  const int h = nu.space().size();
  const int n = nu.n();
  const std::size_t size = nu.num_configurations();
  std::vector<ExactMeasure> out;
  for (std::size_t r = 0; r < size; ++r) out.push_back(ExactMeasure::PointMass(nu.space(), n, r));
  for (double lambda : {-1.0, -0.5, 0.5, 1.0}) {
    std::vector<double> w(size);
    double total = 0.0;
    for (std::size_t r = 0; r < size; ++r) {
      w[r] = nu[r] * std::exp(lambda * CountOnes(r, h, n));
      total += w[r];
    }
    for (double& x : w) x /= total;
    out.emplace_back(nu.space(), n, std::move(w));
  }
  std::uint64_t stride = size;
  for (int v = 0; v < n; ++v) {
    stride /= static_cast<std::uint64_t>(h);
    for (int s = 0; s < h; ++s) {
      std::vector<double> w(size, 0.0);
      double total = 0.0;
      for (std::size_t r = 0; r < size; ++r) {
        if (static_cast<int>((r / stride) % h) == s) {
          w[r] = nu[r];
          total += w[r];
        }
      }
      if (total <= 0.0) continue;
      for (double& x : w) x /= total;
      out.emplace_back(nu.space(), n, std::move(w));
    }
  }
  return out;
}

InequalityReport CheckT1(const MarkovTreeModel& model, std::span<const ExactMeasure> mus,
                         const std::string& label) {
  InequalityReport report;
  report.name = "transport_entropy";
  const double n = model.n();
  const double big_delta = BigDelta(model.tree(), KernelLipschitz(model));
  const ExactMeasure nu = ComputeExactMeasure(model);
  const WeightedHamming metric(model.space(), model.n());
  for (std::size_t i = 0; i < mus.size(); ++i) {
    const std::string where = Join(label, "mu=" + std::to_string(i));
    const double entropy = RelativeEntropy(mus[i], nu);
    if (std::isinf(entropy)) {
      report.Record(std::numeric_limits<double>::infinity(), where);
      continue;
    }
    const double distance = Wasserstein(mus[i], nu, metric).distance;
    report.Record(big_delta / n * std::sqrt(entropy / 2.0) - distance, where);
  }
  return report;
}

double ExactMagnetizationTail(std::span<const double> distribution, double eps) {
  const double n = static_cast<double>(distribution.size()) - 1.0;
  double mean = 0.0;
  for (std::size_t m = 0; m < distribution.size(); ++m) mean += distribution[m] * m;
  const double threshold = n * eps - 1e-9;
  double tail = 0.0;
  for (std::size_t m = 0; m < distribution.size(); ++m) {
    if (std::abs(static_cast<double>(m) - mean) >= threshold) tail += distribution[m];
  }
  return tail;
}

InequalityReport CheckTail(const IsingModel& model, std::span<const double> epsilons,
                           std::size_t mc_samples, std::uint64_t seed,
                           const std::string& label) {
  InequalityReport report;
  report.name = "tail";
  const double n = model.n();
  const double big_delta = BigDelta(model.tree(), model.b());
  const std::vector<double> dist = MagnetizationDistribution(model);
  std::vector<Configuration> samples;
  if (mc_samples > 0) samples = Sample(model.model(), mc_samples, seed);
  for (double eps : epsilons) {
    const double tail = ExactMagnetizationTail(dist, eps);
    const double bound = 2.0 * std::exp(-2.0 * n * n * eps * eps / (big_delta * big_delta));
    report.Record(bound - tail, Join(label, "eps=" + FormatNumber(eps)));
    if (!samples.empty()) {
      std::size_t hits = 0;
      for (const Configuration& x : samples) {
        int ones = 0;
        for (std::uint8_t s : x) ones += s;
        if (std::abs(ones - n / 2.0) >= n * eps - 1e-9) ++hits;
      }
      if (!report.advisory.empty()) report.advisory += "; ";
      report.advisory += Join(label, "eps=" + FormatNumber(eps) + " exact=" +
                                         FormatNumber(tail) + " empirical=" +
                                         FormatNumber(static_cast<double>(hits) /
                                                      samples.size()));
    }
  }
  return report;
}

InequalityReport CheckOptimalityChain(const RootedTree& t, double p, const std::string& label) {
  InequalityReport report;
  report.name = "optimality_chain";
  const IsingModel model(t, p);
  const double b = model.b();
  const double n = t.size();
  const double s = OracleDistanceSum(t, b);
  const double big_delta = BigDelta(t, b);
  const std::string where = Join(label, "p=" + FormatNumber(p));
  if (t.size() <= kMaxDpVertices) {
    const MagnetizationVariance var = VarianceOfMagnetization(model);
    report.Record(-std::abs(*var.exact - s / (4.0 * n * n)), where + " variance");
  }
  report.Record(s - (1.0 - b * b) * big_delta * big_delta, where + " pair_sum");
  report.Record(big_delta - big_delta * std::sqrt(1.0 - b * b) / 2.0, where + " constant");
  return report;
}

InequalityReport CheckMixingCorollary(const RootedTree& t, double b, std::uint64_t seed,
                                      const std::string& label) {
  InequalityReport report;
  report.name = "mixing_corollary";
  const DescendantProfile profile = ComputeDescendantProfile(t, b);
  double max_delta = 0.0;
  for (double d : profile.delta) max_delta = std::max(max_delta, d);
  std::vector<std::vector<VertexId>> orders;
  orders.push_back(BreadthFirstOrder(t));
  for (std::uint64_t i = 0; i < 3; ++i) orders.push_back(RandomBreadthFirstOrder(t, seed + i));
  for (std::size_t o = 0; o < orders.size(); ++o) {
    const MixingNorms norms = ComputeMixingNorms(MixingMatrix(t, b, orders[o]));
    double sq = 0.0;
    for (double x : norms.row_sums) sq += x * x;
    const std::string where = Join(label, "b=" + FormatNumber(b) + " order=" + std::to_string(o));
    report.Record(-std::abs(norms.inf_norm - max_delta), where + " inf_norm");
    report.Record(-std::abs(std::sqrt(sq) - profile.big_delta), where + " row_sums");
    report.Record(norms.two_norm - profile.big_delta / std::sqrt(static_cast<double>(t.size())),
                  where + " two_norm");
  }
  return report;
}

InequalityReport CheckDeltaBounds(const RootedTree& t, double b, const std::string& label) {
  InequalityReport report;
  report.name = "delta_bounds";
  const double s = OracleDistanceSum(t, b);
  const double big_delta = BigDelta(t, b);
  const double sq = big_delta * big_delta;
  const std::string where = Join(label, "b=" + FormatNumber(b));
  report.Record(sq - s, where + " lower");
  report.Record(s / (1.0 - b * b) - sq, where + " upper");
  if (auto bound = AltDeltaBound(t, b)) report.Record(*bound - big_delta, where + " max_children");
  return report;
}

std::vector<InequalityReport> RunVerificationSuite(std::uint64_t seed) {
  const std::vector<CorpusTree> corpus = VerificationCorpus(seed);
  const double ps[] = {0.05, 0.1, 0.25, 0.4, 0.5};
  const double bs[] = {0.0, 0.3, 0.6, 0.9};
  const double lambdas[] = {-2.0, -1.0, -0.5, 0.0, 0.5, 1.0, 2.0};
  const double epsilons[] = {0.1, 0.25, 0.4, 0.5};

  InequalityReport exp_moment = Named("exp_moment");
  InequalityReport t1 = Named("transport_entropy");
  InequalityReport tail = Named("tail");
  InequalityReport chain = Named("optimality_chain");
  InequalityReport mixing = Named("mixing_corollary");
  InequalityReport bounds = Named("delta_bounds");
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    const CorpusTree& entry = corpus[i];
    const RootedTree& t = entry.tree;
    const auto shared = std::make_shared<const RootedTree>(t);
    std::vector<TestFunction> functions;
    if (t.size() <= 12) {
      functions.push_back(MagnetizationFunction(t.size()));
      for (TestFunction& f : McShaneFunctions(t.size(), 20, seed * 1000 + i)) {
        functions.push_back(std::move(f));
      }
    }
    for (double p : ps) {
      const IsingModel model(shared, p);
      const std::string label = "tree=" + entry.name + " p=" + FormatNumber(p);
      if (!functions.empty()) {
        exp_moment.Merge(CheckExpMoment(model.model(), functions, lambdas, label));
      }
      if (t.size() <= 8) {
        const auto mus = TransportTestMeasures(ComputeExactMeasure(model.model()));
        t1.Merge(CheckT1(model.model(), mus, label));
      }
      tail.Merge(CheckTail(model, epsilons, 0, seed, label));
      chain.Merge(CheckOptimalityChain(t, p, "tree=" + entry.name));
    }
    for (double b : bs) {
      mixing.Merge(CheckMixingCorollary(t, b, seed + i, "tree=" + entry.name));
      bounds.Merge(CheckDeltaBounds(t, b, "tree=" + entry.name));
    }
  }
  return {exp_moment, t1, tail, chain, mixing, bounds};
}

}  // namespace treeconc

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

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <utility>

#include "treeconc/delta.h"
#include "treeconc/parallel.h"
#include "treeconc/transport.h"

namespace treeconc {

namespace {

constexpr double kStochasticTolerance = 1e-12;

void ValidateDistribution(std::span<const double> p, const std::string& what) {
  double sum = 0.0;
  for (double x : p) {
    if (!(x >= 0.0) || !std::isfinite(x)) {
      throw std::invalid_argument(what + ": entries must be finite and nonnegative");
    }
    sum += x;
  }
  if (std::abs(sum - 1.0) > kStochasticTolerance) {
    throw std::invalid_argument(what + ": sums to " + std::to_string(sum) + ", not 1");
  }
}

std::vector<double> FlipKernel(double p) { return {1.0 - p, p, p, 1.0 - p}; }

}  // namespace

MarkovTreeModel::MarkovTreeModel(std::shared_ptr<const RootedTree> tree, StateSpace space,
                                 std::vector<double> root_dist, std::vector<double> kernels)
    : tree_(std::move(tree)),
      space_(std::move(space)),
      root_dist_(std::move(root_dist)),
      kernels_(std::move(kernels)) {
  if (!tree_) throw std::invalid_argument("MarkovTreeModel: null tree");
  const std::size_t h = static_cast<std::size_t>(space_.size());
  if (root_dist_.size() != h) {
    throw std::invalid_argument("MarkovTreeModel: root distribution has " +
                                std::to_string(root_dist_.size()) + " entries, expected " +
                                std::to_string(h));
  }
  ValidateDistribution(root_dist_, "MarkovTreeModel: root distribution");
  const std::size_t n = static_cast<std::size_t>(tree_->size());
  if (kernels_.size() != n * h * h) {
    throw std::invalid_argument("MarkovTreeModel: expected " + std::to_string(n * h * h) +
                                " kernel entries, got " + std::to_string(kernels_.size()));
  }
  for (std::size_t i = 0; i < h * h; ++i) kernels_[i] = (i / h == i % h) ? 1.0 : 0.0;
  for (std::size_t v = 1; v < n; ++v) {
    for (std::size_t x = 0; x < h; ++x) {
      ValidateDistribution(
          std::span<const double>(kernels_.data() + v * h * h + x * h, h),
          "MarkovTreeModel: kernel of vertex " + std::to_string(v) + ", row " +
              std::to_string(x));
    }
  }
}

MarkovTreeModel MarkovTreeModel::Homogeneous(std::shared_ptr<const RootedTree> tree,
                                             StateSpace space, std::vector<double> root_dist,
                                             std::span<const double> kernel) {
  if (!tree) throw std::invalid_argument("MarkovTreeModel: null tree");
  const std::size_t hh = static_cast<std::size_t>(space.size()) * space.size();
  if (kernel.size() != hh) {
    throw std::invalid_argument("MarkovTreeModel: kernel must have " + std::to_string(hh) +
                                " entries");
  }
  std::vector<double> all;
  all.reserve(hh * tree->size());
  for (VertexId v = 0; v < tree->size(); ++v) all.insert(all.end(), kernel.begin(), kernel.end());
  return MarkovTreeModel(std::move(tree), std::move(space), std::move(root_dist),
                         std::move(all));
}

std::span<const double> MarkovTreeModel::kernel(VertexId v) const {
  tree_->Check(v);
  const std::size_t hh = static_cast<std::size_t>(states()) * states();
  return {kernels_.data() + static_cast<std::size_t>(v) * hh, hh};
}

void ValidateFlipProbability(double p) {
  if (!(p > 0.0 && p <= 0.5)) {
    throw std::invalid_argument("flip probability must lie in (0, 1/2], got " +
                                std::to_string(p));
  }
}

IsingModel::IsingModel(std::shared_ptr<const RootedTree> tree, double p)
    : p_((ValidateFlipProbability(p), p)),
      model_(MarkovTreeModel::Homogeneous(std::move(tree), StateSpace::Discrete(2),
                                          {0.5, 0.5}, FlipKernel(p))) {}

IsingModel::IsingModel(const RootedTree& tree, double p)
    : IsingModel(std::make_shared<const RootedTree>(tree), p) {}

double KernelLipschitz(const MarkovTreeModel& model) {
  const StateSpace& space = model.space();
  const int h = space.size();
  const bool discrete = space.is_discrete();
  double best = 0.0;
  for (VertexId v = 1; v < model.n(); ++v) {
    const std::span<const double> k = model.kernel(v);
    for (int x = 0; x < h; ++x) {
      for (int y = x + 1; y < h; ++y) {
        const auto row_x = k.subspan(static_cast<std::size_t>(x) * h, h);
        const auto row_y = k.subspan(static_cast<std::size_t>(y) * h, h);
        const double moved = discrete ? TotalVariation(row_x, row_y)
                                      : BaseWasserstein(space, row_x, row_y);
        best = std::max(best, moved / space.distance(x, y));
      }
    }
  }
  return best;
}

std::array<double, 4> IsingStepMatrix(double p, int m) {
  ValidateFlipProbability(p);
  if (m < 0) throw std::invalid_argument("IsingStepMatrix: negative step count");
  const double bm = std::pow(1.0 - 2.0 * p, m);
  const double same = 0.5 * (1.0 + bm), diff = 0.5 * (1.0 - bm);
  return {same, diff, diff, same};
}

namespace {

std::uint64_t SplitMix(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

double UniformFor(std::uint64_t seed, std::uint64_t sample, std::uint64_t vertex) {
  const std::uint64_t h = SplitMix(SplitMix(SplitMix(seed) ^ sample) ^ vertex);
  return static_cast<double>(h >> 11) * 0x1.0p-53;
}

std::uint8_t Draw(std::span<const double> dist, double u) {
  double cum = 0.0;
  std::size_t last = 0;
  for (std::size_t y = 0; y < dist.size(); ++y) {
    if (dist[y] <= 0.0) continue;
    cum += dist[y];
    last = y;
    if (u < cum) return static_cast<std::uint8_t>(y);
  }
  return static_cast<std::uint8_t>(last);
}

}  // namespace

std::vector<Configuration> Sample(const MarkovTreeModel& model, std::size_t count,
                                  std::uint64_t seed) {
  if (count == 0) throw std::invalid_argument("Sample: count must be at least 1");
  const VertexId n = model.n();
  const std::size_t h = static_cast<std::size_t>(model.states());
  std::vector<Configuration> out(count, Configuration(n));
  constexpr std::size_t kBlock = 1024;
  ParallelFor((count + kBlock - 1) / kBlock, [&](std::size_t block) {
    const std::size_t end = std::min(count, (block + 1) * kBlock);
    for (std::size_t s = block * kBlock; s < end; ++s) {
      Configuration& x = out[s];
      x[0] = Draw(model.root_dist(), UniformFor(seed, s, 0));
      for (VertexId v = 1; v < n; ++v) {
        const std::uint8_t from = x[model.tree().parent(v)];
        x[v] = Draw(model.kernel(v).subspan(from * h, h), UniformFor(seed, s, v));
      }
    }
  });
  return out;
}

ExactMeasure ComputeExactMeasure(const MarkovTreeModel& model) {
  const int h = model.states();
  const int n = model.n();
  const std::uint64_t count = ConfigurationCount(h, n);
  std::vector<double> probs(count);
  for (std::uint64_t r = 0; r < count; ++r) {
    const Configuration x = DecodeConfiguration(r, h, n);
    double p = model.root_dist()[x[0]];
    for (VertexId v = 1; v < n && p > 0.0; ++v) {
      p *= model.q(v, x[model.tree().parent(v)], x[v]);
    }
    probs[r] = p;
  }
  return ExactMeasure(model.space(), n, std::move(probs));
}

namespace {

void CheckDpSize(const MarkovTreeModel& model, const char* what) {
  if (model.n() > kMaxDpVertices) {
    throw std::length_error(std::string(what) + ": " + std::to_string(model.n()) +
                            " vertices exceeds the limit of " +
                            std::to_string(kMaxDpVertices));
  }
}

std::vector<double> Convolve(const std::vector<double>& a, const std::vector<double>& b) {
  std::vector<double> c(a.size() + b.size() - 1, 0.0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) c[i + j] += a[i] * b[j];
  }
  return c;
}

}  // namespace

std::vector<double> MagnetizationDistribution(const MarkovTreeModel& model) {
  if (model.states() != 2) {
    throw std::invalid_argument("MagnetizationDistribution: needs a two-state model");
  }
  CheckDpSize(model, "MagnetizationDistribution");
  const VertexId n = model.n();
  // acc[v][s]: distribution polynomial of ones among the merged descendants of
  // v, given x_v = s.
  std::vector<std::array<std::vector<double>, 2>> acc(n);
  for (auto& a : acc) a = {std::vector<double>{1.0}, std::vector<double>{1.0}};
  for (VertexId v = n - 1; v >= 0; --v) {
    std::vector<double> full0 = std::move(acc[v][0]);
    std::vector<double> full1 = std::move(acc[v][1]);
    full0.push_back(0.0);
    full1.insert(full1.begin(), 0.0);
    if (v == 0) {
      std::vector<double> out(full0.size());
      for (std::size_t m = 0; m < out.size(); ++m) {
        out[m] = model.root_dist()[0] * full0[m] + model.root_dist()[1] * full1[m];
      }
      return out;
    }
    const VertexId p = model.tree().parent(v);
    for (int s = 0; s < 2; ++s) {
      std::vector<double> mixed(full0.size());
      for (std::size_t m = 0; m < mixed.size(); ++m) {
        mixed[m] = model.q(v, s, 0) * full0[m] + model.q(v, s, 1) * full1[m];
      }
      acc[p][s] = Convolve(acc[p][s], mixed);
    }
  }
  return {};
}

std::vector<double> MagnetizationDistribution(const IsingModel& model) {
  // Spin-flip symmetry: c_m = c_{n-m}. Averaging the mirrored entries makes
  // the computed distribution symmetric to the last bit.
  std::vector<double> c = MagnetizationDistribution(model.model());
  for (std::size_t m = 0, k = c.size() - 1; m < k; ++m, --k) {
    const double mean = 0.5 * (c[m] + c[k]);
    c[m] = mean;
    c[k] = mean;
  }
  return c;
}

std::vector<double> VertexMarginals(const MarkovTreeModel& model) {
  const std::size_t h = static_cast<std::size_t>(model.states());
  const VertexId n = model.n();
  std::vector<double> marg(static_cast<std::size_t>(n) * h, 0.0);
  std::copy(model.root_dist().begin(), model.root_dist().end(), marg.begin());
  for (VertexId v = 1; v < n; ++v) {
    const std::size_t p = static_cast<std::size_t>(model.tree().parent(v));
    for (std::size_t x = 0; x < h; ++x) {
      for (std::size_t y = 0; y < h; ++y) {
        marg[v * h + y] += marg[p * h + x] * model.q(v, static_cast<int>(x), static_cast<int>(y));
      }
    }
  }
  return marg;
}

std::vector<double> MagnetizationValues(int n) {
  std::vector<double> c(static_cast<std::size_t>(n) * 2);
  for (int v = 0; v < n; ++v) c[2 * v + 1] = 1.0;
  return c;
}

double LogExpMoment(const MarkovTreeModel& model, std::span<const double> values,
                    double lambda) {
  CheckDpSize(model, "LogExpMoment");
  const std::size_t h = static_cast<std::size_t>(model.states());
  const VertexId n = model.n();
  if (values.size() != static_cast<std::size_t>(n) * h) {
    throw std::invalid_argument("LogExpMoment: expected " + std::to_string(n * h) +
                                " values, got " + std::to_string(values.size()));
  }
  for (VertexId v = 0; v < n; ++v) {
    for (std::size_t x = 0; x < h; ++x) {
      for (std::size_t y = x + 1; y < h; ++y) {
        const double diff = std::abs(values[v * h + x] - values[v * h + y]);
        if (diff > model.space().distance(static_cast<int>(x), static_cast<int>(y)) + 1e-12) {
          throw std::invalid_argument(
              "LogExpMoment: values at vertex " + std::to_string(v) + " differ by " +
              std::to_string(diff) + " between states " + std::to_string(x) + " and " +
              std::to_string(y) + ", more than their distance");
        }
      }
    }
  }
  const std::vector<double> marg = VertexMarginals(model);
  std::vector<double> msg(static_cast<std::size_t>(n) * h);
  std::vector<double> log_scale(n, 0.0);
  for (VertexId v = 0; v < n; ++v) {
    double mean = 0.0;
    for (std::size_t x = 0; x < h; ++x) mean += marg[v * h + x] * values[v * h + x];
    for (std::size_t x = 0; x < h; ++x) {
      msg[v * h + x] = std::exp(lambda * (values[v * h + x] - mean));
    }
  }
  std::vector<double> up(h);
  for (VertexId v = n - 1; v >= 1; --v) {
    const std::size_t p = static_cast<std::size_t>(model.tree().parent(v));
    for (std::size_t s = 0; s < h; ++s) {
      double g = 0.0;
      for (std::size_t y = 0; y < h; ++y) {
        g += model.q(v, static_cast<int>(s), static_cast<int>(y)) * msg[v * h + y];
      }
      up[s] = g;
    }
    double top = 0.0;
    for (std::size_t s = 0; s < h; ++s) {
      msg[p * h + s] *= up[s];
      top = std::max(top, msg[p * h + s]);
    }
    log_scale[p] += log_scale[v];
    if (top > 0.0) {
      for (std::size_t s = 0; s < h; ++s) msg[p * h + s] /= top;
      log_scale[p] += std::log(top);
    }
  }
  double root = 0.0;
  for (std::size_t s = 0; s < h; ++s) root += model.root_dist()[s] * msg[s];
  return std::log(root) + log_scale[0];
}

double ExpMoment(const MarkovTreeModel& model, std::span<const double> values,
                 double lambda) {
  return std::exp(LogExpMoment(model, values, lambda));
}

double LogExpMomentFromTable(const ExactMeasure& measure, std::span<const double> f,
                             double lambda) {
  if (f.size() != measure.num_configurations()) {
    throw std::invalid_argument("LogExpMomentFromTable: table size mismatch");
  }
  const double mean = measure.Expectation(f);
  const double scale = lambda * measure.n();
  double top = -std::numeric_limits<double>::infinity();
  for (std::size_t r = 0; r < f.size(); ++r) {
    if (measure[r] > 0.0) top = std::max(top, scale * (f[r] - mean));
  }
  double sum = 0.0;
  for (std::size_t r = 0; r < f.size(); ++r) {
    if (measure[r] > 0.0) sum += measure[r] * std::exp(scale * (f[r] - mean) - top);
  }
  return top + std::log(sum);
}

MagnetizationVariance VarianceOfMagnetization(const IsingModel& model) {
  const double n = model.n();
  MagnetizationVariance out;
  out.formula = PairDistanceSum(model.tree(), model.b()) / (4.0 * n * n);
  if (model.n() <= kMaxDpVertices) {
    const std::vector<double> c = MagnetizationDistribution(model);
    double mean = 0.0;
    for (std::size_t m = 0; m < c.size(); ++m) mean += c[m] * static_cast<double>(m);
    double var = 0.0;
    for (std::size_t m = 0; m < c.size(); ++m) {
      const double d = static_cast<double>(m) - mean;
      var += c[m] * d * d;
    }
    out.exact = var / (n * n);
  }
  return out;
}

}  // namespace treeconc

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

// treeconc: command-line front end for the treeconc library.

#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "treeconc/broadcast.h"
#include "treeconc/delta.h"
#include "treeconc/figure1.h"
#include "treeconc/model_io.h"
#include "treeconc/numeric_format.h"
#include "treeconc/spectral.h"
#include "treeconc/transport.h"
#include "treeconc/tree.h"
#include "treeconc/tree_io.h"
#include "treeconc/verify.h"

namespace {

using nlohmann::json;
using namespace treeconc;

// Rounds through the 12-digit text form so JSON output carries the same
// digits as CSV output.
json Num(double x) {
  if (!std::isfinite(x)) return nullptr;
  return std::stod(FormatNumber(x));
}

struct RunConfig {
  std::string tree_file;
  std::string gen;
  std::string model_file;
  std::optional<double> b;
  std::optional<double> p;
  int k_max = -1;
  std::uint64_t seed = 0;
  std::string out;
  std::string format = "json";
};

void AddTreeOptions(CLI::App* cmd, RunConfig& cfg) {
  auto* tree = cmd->add_option("--tree", cfg.tree_file, "tree file (n, then parent list)");
  auto* gen = cmd->add_option("--gen", cfg.gen,
                              "generator: dary:D:K, threeone:K, path:L, gw:P0,P1,..:K:SEED");
  tree->excludes(gen);
}

void AddContraction(CLI::App* cmd, RunConfig& cfg) {
  auto* b = cmd->add_option("--b", cfg.b, "contraction b in [0, 1)");
  auto* p = cmd->add_option("--p", cfg.p, "flip probability p in (0, 1/2]; b = 1 - 2p");
  b->excludes(p);
}

void AddCommon(CLI::App* cmd, RunConfig& cfg) {
  cmd->add_option("--out", cfg.out, "output file (default: standard output)");
  cmd->add_option("--seed", cfg.seed, "random seed");
}

RootedTree LoadTree(const RunConfig& cfg) {
  if (!cfg.tree_file.empty()) return ReadTreeFile(cfg.tree_file);
  if (!cfg.gen.empty()) return Generate(ParseGeneratorSpec(cfg.gen));
  return Generate(PathTreeSpec{1});
}

double RequireB(const RunConfig& cfg) {
  if (cfg.b) {
    ValidateContraction(*cfg.b);
    return *cfg.b;
  }
  if (cfg.p) {
    ValidateFlipProbability(*cfg.p);
    return 1.0 - 2.0 * *cfg.p;
  }
  throw std::invalid_argument("one of --b or --p is required");
}

MarkovTreeModel LoadModel(const RunConfig& cfg) {
  if (!cfg.model_file.empty()) {
    if (cfg.p || !cfg.tree_file.empty() || !cfg.gen.empty()) {
      throw std::invalid_argument("--model cannot be combined with --tree, --gen or --p");
    }
    return ReadModelFile(cfg.model_file).model;
  }
  if (!cfg.p) throw std::invalid_argument("--p or --model is required");
  return IsingModel(LoadTree(cfg), *cfg.p).model();
}

void Emit(const RunConfig& cfg, const std::string& text) {
  if (cfg.out.empty()) {
    std::cout << text;
    std::cout.flush();
    return;
  }
  std::ofstream file(cfg.out, std::ios::binary);
  if (!file) throw std::runtime_error("cannot open output file '" + cfg.out + "'");
  file << text;
  if (!file) throw std::runtime_error("failed writing '" + cfg.out + "'");
}

std::string Dump(const json& j) { return j.dump(2) + "\n"; }

json ReportJson(const InequalityReport& r) {
  json j = {{"name", r.name},
            {"instances", r.instances},
            {"worst_slack", Num(r.worst_slack)},
            {"passed", r.passed},
            {"witness", r.witness}};
  if (!r.advisory.empty()) j["advisory"] = r.advisory;
  return j;
}

int CmdGenTree(const RunConfig& cfg) {
  std::ostringstream out;
  WriteTreeText(out, LoadTree(cfg));
  Emit(cfg, out.str());
  return 0;
}

int CmdDelta(const RunConfig& cfg) {
  const RootedTree t = LoadTree(cfg);
  const double b = RequireB(cfg);
  const DescendantProfile profile = ComputeDescendantProfile(t, b);
  if (cfg.format == "csv") {
    std::ostringstream out;
    out << "vertex,delta\n";
    for (VertexId v = 0; v < t.size(); ++v) out << v << ',' << FormatNumber(profile.delta[v]) << '\n';
    Emit(cfg, out.str());
    return 0;
  }
  const SandwichBounds sandwich = ComputeSandwichBounds(t, b);
  const auto alt = AltDeltaBound(t, b);
  json deltas = json::array();
  for (double d : profile.delta) deltas.push_back(Num(d));
  json j = {{"n", t.size()},
            {"b", Num(b)},
            {"delta", Num(profile.big_delta)},
            {"delta_sq", Num(sandwich.delta_sq)},
            {"pair_sum", Num(sandwich.lower)},
            {"sandwich_upper", Num(sandwich.upper)},
            {"max_children_bound", alt ? Num(*alt) : json(nullptr)},
            {"vertex_delta", deltas}};
  Emit(cfg, Dump(j));
  return 0;
}

int CmdDeltaSeries(const RunConfig& cfg) {
  const RootedTree t = LoadTree(cfg);
  const double b = RequireB(cfg);
  const int k_max = cfg.k_max < 0 ? t.height() : cfg.k_max;
  if (k_max > t.height()) {
    throw std::invalid_argument("--kmax " + std::to_string(k_max) + " exceeds the tree height " +
                                std::to_string(t.height()));
  }
  const DeltaSeries s = ComputeDeltaSeries(t, b, k_max);
  std::ostringstream out;
  out << "k,n_vertices,delta,delta_sq_over_n\n";
  for (std::size_t i = 0; i < s.ks.size(); ++i) {
    out << s.ks[i] << ',' << s.vertex_counts[i] << ',' << FormatNumber(s.deltas[i]) << ','
        << FormatNumber(s.ratios[i]) << '\n';
  }
  Emit(cfg, out.str());
  return 0;
}

int CmdSpectral(const RunConfig& cfg, int j) {
  const RootedTree t = LoadTree(cfg);
  if (j < 0) throw std::invalid_argument("--j must be nonnegative");
  PowerIterationOptions options;
  options.seed = cfg.seed;
  json out = {{"j", j},
              {"exact", Num(QPowerNormExact(t, j))},
              {"iterative", Num(QPowerNormIterative(t, j, options))}};
  if (cfg.b) {
    const int k = cfg.k_max < 0 ? t.height() : cfg.k_max;
    out["b"] = Num(*cfg.b);
    out["k"] = k;
    out["partial_sum_norm"] = Num(PartialSumNorm(t, *cfg.b, k, options));
    out["partial_sum_on_ball"] = Num(PartialSumOnBall(t, *cfg.b, k));
  }
  Emit(cfg, Dump(out));
  return 0;
}

int CmdMixing(const RunConfig& cfg, bool shuffle) {
  const RootedTree t = LoadTree(cfg);
  const double b = RequireB(cfg);
  const std::vector<VertexId> order =
      shuffle ? RandomBreadthFirstOrder(t, cfg.seed) : BreadthFirstOrder(t);
  const MixingNorms norms = ComputeMixingNorms(MixingMatrix(t, b, order));
  const DescendantProfile profile = ComputeDescendantProfile(t, b);
  double sq = 0.0, max_delta = 0.0;
  for (double x : norms.row_sums) sq += x * x;
  for (double d : profile.delta) max_delta = std::max(max_delta, d);
  json j = {{"n", t.size()},
            {"b", Num(b)},
            {"inf_norm", Num(norms.inf_norm)},
            {"max_delta", Num(max_delta)},
            {"two_norm", Num(norms.two_norm)},
            {"row_sums_norm", Num(std::sqrt(sq))},
            {"delta", Num(profile.big_delta)}};
  Emit(cfg, Dump(j));
  return 0;
}

int CmdSample(const RunConfig& cfg, std::size_t count) {
  const MarkovTreeModel model = LoadModel(cfg);
  std::string text;
  for (const Configuration& x : Sample(model, count, cfg.seed)) {
    for (std::uint8_t s : x) text += static_cast<char>('0' + s);
    text += '\n';
  }
  Emit(cfg, text);
  return 0;
}

int CmdExact(const RunConfig& cfg) {
  std::ostringstream out;
  WriteMeasureCsv(out, ComputeExactMeasure(LoadModel(cfg)));
  Emit(cfg, out.str());
  return 0;
}

std::vector<double> ParseList(const std::string& text) {
  std::vector<double> out;
  std::stringstream in(text);
  std::string token;
  while (std::getline(in, token, ',')) out.push_back(std::stod(token));
  return out;
}

int CmdWasserstein(const RunConfig& cfg, const std::string& mu_path, const std::string& nu_path,
                   int n, int states, const std::string& weights) {
  const StateSpace space = StateSpace::Discrete(states);
  const ExactMeasure mu = ReadMeasureFile(mu_path, space, n);
  const ExactMeasure nu = ReadMeasureFile(nu_path, space, n);
  const WeightedHamming metric =
      weights.empty() ? WeightedHamming(space, n) : WeightedHamming(space, ParseList(weights));
  if (metric.n() != n) throw std::invalid_argument("--weights needs one entry per coordinate");
  const TransportResult r = Wasserstein(mu, nu, metric);
  json j = {{"distance", Num(r.distance)},
            {"dual_objective", Num(r.plan.dual_objective)},
            {"max_dual_violation", Num(r.plan.max_dual_violation)},
            {"relative_entropy", Num(RelativeEntropy(mu, nu))},
            {"dropped_mass", Num(r.plan.dropped_source_mass + r.plan.dropped_target_mass)}};
  Emit(cfg, Dump(j));
  return 0;
}

int CmdVerify(const RunConfig& cfg, const std::string& which, std::size_t mc_samples) {
  std::vector<InequalityReport> reports;
  if (which == "all") {
    reports = RunVerificationSuite(cfg.seed);
  } else {
    const RootedTree t = LoadTree(cfg);
    const std::string label = "tree=" + (cfg.tree_file.empty() ? cfg.gen : cfg.tree_file);
    if (which == "mixing" || which == "bounds") {
      const double b = RequireB(cfg);
      reports.push_back(which == "mixing" ? CheckMixingCorollary(t, b, cfg.seed, label)
                                          : CheckDeltaBounds(t, b, label));
    } else {
      if (!cfg.p) throw std::invalid_argument("verify " + which + " needs --p");
      const IsingModel model(t, *cfg.p);
      if (which == "exp-moment") {
        std::vector<TestFunction> fns{MagnetizationFunction(t.size())};
        for (auto& f : McShaneFunctions(t.size(), 20, cfg.seed)) fns.push_back(std::move(f));
        const double lambdas[] = {-2.0, -1.0, -0.5, 0.0, 0.5, 1.0, 2.0};
        reports.push_back(CheckExpMoment(model.model(), fns, lambdas, label));
      } else if (which == "t1") {
        const auto mus = TransportTestMeasures(ComputeExactMeasure(model.model()));
        reports.push_back(CheckT1(model.model(), mus, label));
      } else if (which == "tail") {
        const double eps[] = {0.1, 0.25, 0.4, 0.5};
        reports.push_back(CheckTail(model, eps, mc_samples, cfg.seed, label));
      } else if (which == "chain") {
        reports.push_back(CheckOptimalityChain(t, *cfg.p, label));
      } else {
        throw std::invalid_argument("unknown check '" + which +
                                    "' (all, exp-moment, t1, tail, chain, mixing, bounds)");
      }
    }
  }
  json out = json::array();
  bool ok = true;
  for (const auto& r : reports) {
    out.push_back(ReportJson(r));
    ok = ok && r.passed;
  }
  Emit(cfg, Dump(out));
  return ok ? 0 : 1;
}

int CmdFigure1(const RunConfig& cfg, const std::string& family, const std::string& bs) {
  const Figure1Family f = ParseFigure1Family(family);
  const int k_max = cfg.k_max < 0 ? Figure1MaxDepth(f) : cfg.k_max;
  std::ostringstream out;
  WriteFigure1Csv(out, ComputeFigure1(f, ParseBList(bs), k_max));
  Emit(cfg, out.str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Concentration parameters of broadcast models on rooted trees"};
  app.require_subcommand(1);
  RunConfig cfg;

  auto* gen_tree = app.add_subcommand("gen-tree", "write a generated tree in text form");
  AddTreeOptions(gen_tree, cfg);
  AddCommon(gen_tree, cfg);

  auto* delta = app.add_subcommand("delta", "descendant generating function and Delta");
  AddTreeOptions(delta, cfg);
  AddContraction(delta, cfg);
  AddCommon(delta, cfg);
  delta->add_option("--format", cfg.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));

  auto* series = app.add_subcommand("delta-series", "Delta_k over truncations, as CSV");
  AddTreeOptions(series, cfg);
  AddContraction(series, cfg);
  AddCommon(series, cfg);
  series->add_option("--kmax", cfg.k_max, "largest truncation depth (default: height)");

  int power = 1;
  auto* spectral = app.add_subcommand("spectral", "norms of powers of the child-sum operator");
  AddTreeOptions(spectral, cfg);
  AddCommon(spectral, cfg);
  spectral->add_option("--j", power, "operator power");
  spectral->add_option("--b", cfg.b, "also report the partial-sum norm at this b");
  spectral->add_option("--kmax", cfg.k_max, "partial-sum length (default: height)");

  bool shuffle = false;
  auto* mixing = app.add_subcommand("mixing", "norms of the mixing matrix");
  AddTreeOptions(mixing, cfg);
  AddContraction(mixing, cfg);
  AddCommon(mixing, cfg);
  mixing->add_flag("--shuffle", shuffle, "use a random breadth-first order drawn from --seed");

  std::size_t count = 1;
  auto* sample = app.add_subcommand("sample", "ancestral samples, one 0/1 string per line");
  AddTreeOptions(sample, cfg);
  AddCommon(sample, cfg);
  sample->add_option("--p", cfg.p, "flip probability");
  sample->add_option("--model", cfg.model_file, "model file");
  sample->add_option("--count", count, "number of samples")->check(CLI::PositiveNumber);

  auto* exact = app.add_subcommand("exact", "exact measure as rank,probability CSV");
  AddTreeOptions(exact, cfg);
  AddCommon(exact, cfg);
  exact->add_option("--p", cfg.p, "flip probability");
  exact->add_option("--model", cfg.model_file, "model file");

  std::string mu_path, nu_path, weights;
  int n = 1, states = 2;
  auto* wass = app.add_subcommand("wasserstein", "transport distance between two measure files");
  AddCommon(wass, cfg);
  wass->add_option("--mu", mu_path, "first measure (rank,probability CSV)")->required();
  wass->add_option("--nu", nu_path, "second measure (rank,probability CSV)")->required();
  wass->add_option("--n", n, "number of coordinates")->required();
  wass->add_option("--states", states, "states per coordinate");
  wass->add_option("--weights", weights, "comma-separated coordinate weights");

  std::string which = "all";
  std::size_t mc_samples = 0;
  auto* verify = app.add_subcommand("verify", "run inequality checks; exit 1 on failure");
  AddTreeOptions(verify, cfg);
  AddContraction(verify, cfg);
  AddCommon(verify, cfg);
  verify->add_option("check", which, "all, exp-moment, t1, tail, chain, mixing or bounds");
  verify->add_option("--mc", mc_samples, "Monte Carlo samples for tail advisories");

  std::string family = "threeone";
  std::string bs = "0.5,isqrt3,0.6,isqrt2,0.75";
  auto* fig = app.add_subcommand("figure1", "Delta_k^2/|V_k| table for the 3-1 or binary tree");
  AddCommon(fig, cfg);
  fig->add_option("--family", family, "threeone or dary2");
  fig->add_option("--bs", bs, "comma-separated b values (isqrt3, isqrt2 allowed)");
  fig->add_option("--kmax", cfg.k_max, "largest depth (default: 25 or 30)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*gen_tree) return CmdGenTree(cfg);
    if (*delta) return CmdDelta(cfg);
    if (*series) return CmdDeltaSeries(cfg);
    if (*spectral) return CmdSpectral(cfg, power);
    if (*mixing) return CmdMixing(cfg, shuffle);
    if (*sample) return CmdSample(cfg, count);
    if (*exact) return CmdExact(cfg);
    if (*wass) return CmdWasserstein(cfg, mu_path, nu_path, n, states, weights);
    if (*verify) return CmdVerify(cfg, which, mc_samples);
    if (*fig) return CmdFigure1(cfg, family, bs);
  } catch (const std::exception& e) {
    std::cerr << "treeconc: " << e.what() << '\n';
    return 2;
  }
  return 2;
}

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

#include "treeconc/model_io.h"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "treeconc/numeric_format.h"
#include "treeconc/tree_io.h"

namespace treeconc {

namespace {

class LineReader {
 public:
  explicit LineReader(std::istream& in) : in_(in) {}

  // Next non-blank, non-comment line; false at end of input.
  bool Next(std::string& line) {
    while (std::getline(in_, line)) {
      ++number_;
      if (!line.empty() && line.back() == '\r') line.pop_back();
      const auto first = line.find_first_not_of(" \t");
      if (first == std::string::npos || line[first] == '#') continue;
      return true;
    }
    return false;
  }
  int number() const { return number_; }
  [[noreturn]] void Fail(const std::string& message) const {
    throw std::runtime_error("line " + std::to_string(number_) + ": " + message);
  }

 private:
  std::istream& in_;
  int number_ = 0;
};

double ParseDouble(const LineReader& reader, const std::string& token) {
  std::size_t used = 0;
  double value = 0.0;
  try {
    value = std::stod(token, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != token.size()) reader.Fail("invalid number '" + token + "'");
  return value;
}

std::vector<double> ParseRow(const LineReader& reader, const std::string& text,
                             std::size_t expected) {
  std::istringstream row(text);
  std::vector<double> values;
  std::string token;
  while (row >> token) values.push_back(ParseDouble(reader, token));
  if (values.size() != expected) {
    reader.Fail("expected " + std::to_string(expected) + " values, found " +
                std::to_string(values.size()));
  }
  return values;
}

std::vector<double> ReadMatrix(LineReader& reader, int h) {
  std::vector<double> m;
  std::string line;
  for (int i = 0; i < h; ++i) {
    if (!reader.Next(line)) reader.Fail("unexpected end of input inside a matrix block");
    const auto row = ParseRow(reader, line, static_cast<std::size_t>(h));
    m.insert(m.end(), row.begin(), row.end());
  }
  return m;
}

}  // namespace

LoadedModel ReadModelText(std::istream& in, const std::string& base_dir) {
  LineReader reader(in);
  std::string line;
  std::optional<std::string> tree_path;
  std::optional<double> p;
  int states = 0;
  std::vector<double> metric, root, kernel;
  std::map<VertexId, std::vector<double>> overrides;
  while (reader.Next(line)) {
    std::istringstream words(line);
    std::string key;
    words >> key;
    std::string rest;
    std::getline(words >> std::ws, rest);
    if (key.rfind("p=", 0) == 0) {
      p = ParseDouble(reader, key.substr(2));
    } else if (key == "tree") {
      if (rest.empty()) reader.Fail("tree needs a path");
      tree_path = rest;
    } else if (key == "states") {
      states = static_cast<int>(ParseDouble(reader, rest));
      if (states < 2 || states > 255) reader.Fail("states must lie in [2, 255]");
    } else if (key == "metric" || key == "root" || key == "kernel") {
      if (states == 0) reader.Fail("'" + key + "' before 'states'");
      if (key == "metric") {
        metric = ReadMatrix(reader, states);
      } else if (key == "root") {
        root = ParseRow(reader, rest, static_cast<std::size_t>(states));
      } else if (rest.empty()) {
        kernel = ReadMatrix(reader, states);
      } else {
        const auto v = static_cast<VertexId>(ParseDouble(reader, rest));
        overrides[v] = ReadMatrix(reader, states);
      }
    } else {
      reader.Fail("unknown directive '" + key + "'");
    }
  }
  if (!tree_path) throw std::runtime_error("model: missing 'tree' line");
  std::filesystem::path path(*tree_path);
  if (path.is_relative() && !base_dir.empty()) path = std::filesystem::path(base_dir) / path;
  auto tree = std::make_shared<const RootedTree>(ReadTreeFile(path.string()));

  if (p) {
    if (states != 0 || !kernel.empty() || !overrides.empty()) {
      throw std::runtime_error("model: 'p=' cannot be combined with a kernel description");
    }
    IsingModel ising(tree, *p);
    return {p, ising.model()};
  }
  if (states == 0 || root.empty()) {
    throw std::runtime_error("model: need 'p=' or states, root and kernel blocks");
  }
  StateSpace space = metric.empty() ? StateSpace::Discrete(states)
                                    : StateSpace(states, std::move(metric));
  const std::size_t hh = static_cast<std::size_t>(states) * states;
  std::vector<double> all(hh * tree->size(), 0.0);
  for (VertexId v = 0; v < tree->size(); ++v) {
    auto it = overrides.find(v);
    const std::vector<double>* src = it != overrides.end() ? &it->second : &kernel;
    if (src->empty()) {
      if (v == 0) continue;
      throw std::runtime_error("model: no kernel for vertex " + std::to_string(v));
    }
    std::copy(src->begin(), src->end(), all.begin() + static_cast<std::ptrdiff_t>(v * hh));
  }
  for (const auto& [v, m] : overrides) tree->Check(v);
  return {std::nullopt, MarkovTreeModel(tree, std::move(space), std::move(root), std::move(all))};
}

LoadedModel ReadModelFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open model file '" + path + "'");
  try {
    return ReadModelText(in, std::filesystem::path(path).parent_path().string());
  } catch (const std::runtime_error& e) {
    throw std::runtime_error(path + ": " + e.what());
  }
}

ExactMeasure ReadMeasureCsv(std::istream& in, const StateSpace& space, int n) {
  const std::uint64_t count = ConfigurationCount(space.size(), n);
  std::vector<double> probs(count, 0.0);
  LineReader reader(in);
  std::string line;
  if (!reader.Next(line) || line != "rank,probability") {
    reader.Fail("expected header 'rank,probability'");
  }
  while (reader.Next(line)) {
    const auto comma = line.find(',');
    if (comma == std::string::npos) reader.Fail("expected 'rank,probability'");
    const double rank = ParseDouble(reader, line.substr(0, comma));
    if (rank < 0 || rank >= static_cast<double>(count) || rank != std::floor(rank)) {
      reader.Fail("rank out of range");
    }
    probs[static_cast<std::size_t>(rank)] += ParseDouble(reader, line.substr(comma + 1));
  }
  return ExactMeasure(space, n, std::move(probs));
}

ExactMeasure ReadMeasureFile(const std::string& path, const StateSpace& space, int n) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open measure file '" + path + "'");
  try {
    return ReadMeasureCsv(in, space, n);
  } catch (const std::runtime_error& e) {
    throw std::runtime_error(path + ": " + e.what());
  }
}

void WriteMeasureCsv(std::ostream& out, const ExactMeasure& measure) {
  out << "rank,probability\n";
  for (std::size_t r = 0; r < measure.num_configurations(); ++r) {
    out << r << ',' << FormatNumber(measure[r]) << '\n';
  }
}

}  // namespace treeconc

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

#include "treeconc/tree_io.h"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <stdexcept>
#include <vector>

namespace treeconc {
namespace {

[[noreturn]] void Fail(int line, const std::string& message) {
  throw std::invalid_argument("tree text line " + std::to_string(line) + ": " +
                              message);
}

std::vector<long long> ParseIntegers(const std::string& text, int line) {
  std::vector<long long> out;
  const char* p = text.data();
  const char* end = p + text.size();
  while (p < end) {
    while (p < end && (*p == ' ' || *p == '\t' || *p == '\r')) ++p;
    if (p == end) break;
    long long value = 0;
    const auto [ptr, ec] = std::from_chars(p, end, value);
    if (ec != std::errc() || (ptr < end && *ptr != ' ' && *ptr != '\t' &&
                              *ptr != '\r')) {
      Fail(line, "expected an integer near '" +
                     std::string(p, std::min<std::ptrdiff_t>(end - p, 16)) +
                     "'");
    }
    out.push_back(value);
    p = ptr;
  }
  return out;
}

}  // namespace

RootedTree ReadTreeText(std::istream& in) {
  std::string header;
  if (!std::getline(in, header)) Fail(1, "missing vertex count");
  const auto count = ParseIntegers(header, 1);
  if (count.size() != 1) Fail(1, "expected a single vertex count");
  if (count[0] < 1) Fail(1, "vertex count must be positive");
  std::string body;
  if (!std::getline(in, body)) Fail(2, "missing parent array");
  const auto entries = ParseIntegers(body, 2);
  if (static_cast<long long>(entries.size()) != count[0]) {
    Fail(2, "expected " + std::to_string(count[0]) + " parent entries, found " +
                std::to_string(entries.size()));
  }
  std::string rest;
  int line = 2;
  while (std::getline(in, rest)) {
    ++line;
    if (rest.find_first_not_of(" \t\r") != std::string::npos) {
      Fail(line, "unexpected trailing content");
    }
  }
  std::vector<VertexId> parents(entries.size());
  for (std::size_t i = 0; i < entries.size(); ++i) {
    if (entries[i] < -1 || entries[i] >= static_cast<long long>(entries.size())) {
      Fail(2, "parent entry at index " + std::to_string(i) + " out of range");
    }
    parents[i] = static_cast<VertexId>(entries[i]);
  }
  try {
    return RootedTree::FromParents(parents);
  } catch (const std::invalid_argument& e) {
    Fail(2, e.what());
  }
}

void WriteTreeText(std::ostream& out, const RootedTree& t) {
  out << t.size() << '\n';
  const auto parents = t.parents();
  for (std::size_t i = 0; i < parents.size(); ++i) {
    if (i > 0) out << ' ';
    out << parents[i];
  }
  out << '\n';
}

RootedTree ReadTreeFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open tree file '" + path + "'");
  try {
    return ReadTreeText(in);
  } catch (const std::invalid_argument& e) {
    throw std::invalid_argument(path + ": " + e.what());
  }
}

void WriteTreeFile(const std::string& path, const RootedTree& t) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write tree file '" + path + "'");
  WriteTreeText(out, t);
}

}  // namespace treeconc

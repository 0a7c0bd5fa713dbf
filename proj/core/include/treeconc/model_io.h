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

#ifndef TREECONC_MODEL_IO_H_
#define TREECONC_MODEL_IO_H_

#include <iosfwd>
#include <optional>
#include <string>

#include "treeconc/broadcast.h"
#include "treeconc/measure.h"

namespace treeconc {

// A model file names a tree file (relative paths resolve against the model
// file's directory) and either a flip probability,
//
//   tree trees/star2.txt
//   p=0.25
//
// or a general kernel description. `metric` and `kernel` are followed by H
// rows of H decimals; `kernel <v>` overrides the kernel at vertex v.
//
//   tree trees/path3.txt
//   states 3
//   metric
//   0 0.5 1
//   0.5 0 0.5
//   1 0.5 0
//   root 0.2 0.3 0.5
//   kernel
//   ...
//
// Blank lines and lines starting with '#' are ignored.
struct LoadedModel {
  std::optional<double> p;  // set for flip-probability models
  MarkovTreeModel model;
};

LoadedModel ReadModelFile(const std::string& path);
LoadedModel ReadModelText(std::istream& in, const std::string& base_dir);

// `rank,probability` CSV; ranks that do not appear have probability 0.
ExactMeasure ReadMeasureCsv(std::istream& in, const StateSpace& space, int n);
ExactMeasure ReadMeasureFile(const std::string& path, const StateSpace& space, int n);
void WriteMeasureCsv(std::ostream& out, const ExactMeasure& measure);

}  // namespace treeconc

#endif  // TREECONC_MODEL_IO_H_

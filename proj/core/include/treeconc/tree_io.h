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

#ifndef TREECONC_TREE_IO_H_
#define TREECONC_TREE_IO_H_

#include <iosfwd>
#include <string>

#include "treeconc/tree.h"

namespace treeconc {

// Canonical tree text format:
//   line 1: vertex count n
//   line 2: n space-separated parent entries, root = -1
// LF line endings, ASCII decimal. Parse errors throw std::invalid_argument
// with the offending line number.
RootedTree ReadTreeText(std::istream& in);
void WriteTreeText(std::ostream& out, const RootedTree& t);

RootedTree ReadTreeFile(const std::string& path);
void WriteTreeFile(const std::string& path, const RootedTree& t);

}  // namespace treeconc

#endif  // TREECONC_TREE_IO_H_

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

#ifndef TREECONC_NUMERIC_FORMAT_H_
#define TREECONC_NUMERIC_FORMAT_H_

#include <string>

namespace treeconc {

// Shortest general-format rendering with at most 12 significant digits.
// Independent of the global locale.
std::string FormatNumber(double value);

}  // namespace treeconc

#endif  // TREECONC_NUMERIC_FORMAT_H_

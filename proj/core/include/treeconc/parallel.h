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

#ifndef TREECONC_PARALLEL_H_
#define TREECONC_PARALLEL_H_

#include <cstddef>
#include <functional>

namespace treeconc {

// Worker count: TREECONC_THREADS when set to a positive integer, otherwise
// the hardware concurrency (at least 1).
int ConfiguredThreads();

// Runs body(i) for i in [0, count) on up to ConfiguredThreads() workers.
// Callers write results by index, so output never depends on the layout.
// The first exception thrown by any body is rethrown on the caller.
void ParallelFor(std::size_t count, const std::function<void(std::size_t)>& body);

}  // namespace treeconc

#endif  // TREECONC_PARALLEL_H_

// Copyright 2026 The TopoFit Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstddef>
#include <functional>

namespace topofit {

/// Number of worker threads used by parallel loops. Defaults to
/// `TOPOFIT_THREADS` when set, otherwise hardware concurrency.
int thread_count();

/// Overrides the worker count for the whole process. `n <= 0` restores the
/// default.
void set_thread_count(int n);

/// Runs `body(i)` for every i in [0, n). Work is split into contiguous static
/// chunks, one per thread. Bodies must only write to per-index storage;
/// callers reduce the results serially in index order, which keeps results
/// independent of the thread count.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

/// Same as parallel_for but hands each thread a half-open range.
void parallel_ranges(std::size_t n,
                     const std::function<void(std::size_t, std::size_t)>& body);

}  // namespace topofit

// Copyright 2026 The spinqudit Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <functional>

namespace spinqudit {

// Worker count: SPINQUDIT_THREADS if set and positive, else hardware concurrency.
int thread_count();

// Runs fn(i) for i in [0, n). Work is split into contiguous blocks, so results
// written by index are independent of the thread count. The first exception
// thrown by any worker is rethrown after all workers join.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

}  // namespace spinqudit

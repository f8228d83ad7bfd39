#pragma once

#include <cstdint>
#include <functional>
#include <vector>

namespace dpbloom {

// Worker count: DPBLOOM_THREADS when set to a positive value, otherwise
// the hardware concurrency (0 or unset means auto).
unsigned worker_count();

// Runs fn(worker, begin, end) over a partition of [0, total) on
// worker_count() threads. Partitioning depends only on `total` and the
// worker count never affects which indices exist, so any per-index
// seeding stays deterministic; callers merge per-worker state in worker
// order to keep reductions reproducible.
void parallel_chunks(uint64_t total,
                     const std::function<void(unsigned, uint64_t, uint64_t)>& fn,
                     unsigned workers = 0);

}  // namespace dpbloom

#pragma once

#include <functional>

namespace stefankpp {

/// Worker count: hardware concurrency capped by the STEFANKPP_THREADS
/// environment variable (read once).
unsigned thread_budget();

/// Runs fn(begin, end) over a static partition of [0, n) on the shared pool.
/// Chunks are fixed by (n, thread count), so writes are deterministic.
/// Falls back to a serial call when the pool has a single worker or n is small.
void parallel_for(long n, const std::function<void(long, long)>& fn);

} // namespace stefankpp

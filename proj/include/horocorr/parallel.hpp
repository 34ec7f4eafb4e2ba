#pragma once

#include <cstddef>
#include <functional>

namespace horocorr {

/// Number of worker threads used by data-parallel loops. Defaults to the
/// HOROCORR_THREADS environment variable, else the hardware concurrency.
int thread_count();
void set_thread_count(int threads);

/// Runs body(i) for i in [0, count). Iterations are split into contiguous
/// chunks, one per thread; callers write results into per-index slots so the
/// output never depends on the schedule.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

}  // namespace horocorr

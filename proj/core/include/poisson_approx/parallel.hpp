#pragma once

#include <cstddef>
#include <functional>

namespace poisson_approx {

// Thread count used by sweep drivers when the caller passes 0.
// Resolution order: POISSON_APPROX_THREADS env var, then hardware concurrency.
unsigned default_thread_count();

// Runs body(i) for i in [0, count) split into contiguous chunks, one chunk per
// thread. Bodies must only write to per-index slots; results are then
// independent of the thread count and of scheduling.
void parallel_for(std::size_t count, unsigned threads,
                  const std::function<void(std::size_t)>& body);

}  // namespace poisson_approx

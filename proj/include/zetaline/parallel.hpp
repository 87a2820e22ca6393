#pragma once

#include <cstddef>
#include <functional>

namespace zetaline {

// Worker count used by parallel_for; 0 means std::thread::hardware_concurrency().
void set_worker_count(int n);
int worker_count();

// Runs body(i) for i in [0, n) on up to worker_count() threads. Iterations are
// split into contiguous blocks; callers write into per-index slots and reduce
// afterwards in index order, so results do not depend on the thread count.
// Each worker inherits the caller's working precision.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace zetaline

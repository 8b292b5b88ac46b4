#pragma once
#include <cstddef>
#include <functional>

namespace nrlab {

// Global worker count for parallel_for. 0 = hardware concurrency.
void set_thread_count(int n);
int thread_count();

// Runs fn(i) for i in [0, n). Each index writes only its own output slot, so
// the result is identical for any thread count. Work is split into contiguous
// chunks; exceptions from workers are rethrown on the calling thread.
void parallel_for(std::size_t n, const std::function<void(std::size_t)> &fn);

}  // namespace nrlab

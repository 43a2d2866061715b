#pragma once

#include <cstddef>
#include <functional>

namespace devqe {

// Runs fn(i) for every i in [0, count) across up to `jobs` threads.
// jobs <= 1 runs inline. Callers must write results to disjoint slots;
// the first exception thrown by fn is rethrown on the calling thread.
void parallel_for(std::size_t count, int jobs, const std::function<void(std::size_t)>& fn);

}  // namespace devqe

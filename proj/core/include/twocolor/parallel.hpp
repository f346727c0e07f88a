#pragma once

#include <cstddef>
#include <functional>

namespace twocolor {

// Worker count from TWOCOLOR_WORKERS, else the hardware concurrency.
int default_worker_count();

// Calls fn(i) for i in [0, count) on `workers` threads using a fixed
// round-robin partition. Rethrows the exception of the lowest failing index.
void parallel_for(std::size_t count, int workers, const std::function<void(std::size_t)>& fn);

}  // namespace twocolor

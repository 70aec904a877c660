#pragma once

#include <functional>

namespace robin_fsi {

/// Worker count from ROBIN_FSI_THREADS, else the hardware concurrency, capped by `requested` if > 0.
int worker_count(int requested = 0);

/// Runs fn(i) for i in [0, n) on up to `threads` workers; rethrows the first exception.
void parallel_for(int n, int threads, const std::function<void(int)>& fn);

}  // namespace robin_fsi

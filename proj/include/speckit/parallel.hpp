#pragma once

#include <functional>

namespace speckit {

/// Number of worker threads to use: the SPECKIT_THREADS environment
/// variable if set to a positive value, otherwise hardware concurrency
/// (SPECKIT_THREADS=0 or unset means auto).
int worker_thread_count();

/// Run fn(i) for i in [0, n) on worker threads. Each index must write
/// only its own output slot; the first exception thrown by any worker is
/// rethrown on the calling thread after all workers join.
void parallel_for(int n, const std::function<void(int)>& fn);

}  // namespace speckit

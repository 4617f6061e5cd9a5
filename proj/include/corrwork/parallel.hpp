#pragma once

#include <cstddef>
#include <functional>

namespace corrwork {

/// Worker count from CORRWORK_THREADS (0 or unset = hardware concurrency).
/// Never less than 1.
unsigned worker_count();

/// Runs task(i) for i in [0, n) on up to worker_count() threads. Tasks must
/// write only to their own output slot; callers merge in index order.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& task);

}  // namespace corrwork

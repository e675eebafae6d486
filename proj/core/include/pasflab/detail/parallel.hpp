#pragma once

#include <cstddef>
#include <functional>

namespace pasflab::detail {

/// Worker count used by parallel_for: min(hardware threads, PASFLAB_THREADS
/// when that environment variable is a positive integer).
unsigned effective_thread_count();

/// Runs body(0..n-1) across a small thread pool.  Work items must write only
/// to their own slots, which keeps every result independent of scheduling
/// and of the worker count.  The first exception (lowest index) is rethrown
/// after all workers join.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace pasflab::detail

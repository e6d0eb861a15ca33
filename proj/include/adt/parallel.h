#pragma once

#include <cstddef>
#include <functional>

namespace adt {

/// Worker count: hardware concurrency, capped by the ADT_DESIGNER_THREADS
/// environment variable when it holds a positive integer.
unsigned worker_count();

/// Calls body(i) for i in [0, n) across worker_count() threads. Indices are
/// handed out in contiguous blocks; the first exception thrown is rethrown
/// after all workers finish.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace adt

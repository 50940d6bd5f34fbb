#pragma once

#include <cstddef>
#include <functional>

namespace hypent {

// Worker count from HYPENT_THREADS, else hardware concurrency. Never changes
// results, only wall time.
unsigned thread_count();

// Calls body(begin, end) on disjoint chunks of [0, n). Blocks until done and
// rethrows the first exception raised by any chunk.
void parallel_for(std::size_t n, const std::function<void(std::size_t, std::size_t)>& body,
                  std::size_t min_chunk = 256);

}  // namespace hypent

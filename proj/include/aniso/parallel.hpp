#pragma once

#include <cstddef>
#include <functional>

namespace aniso {

// Worker count: ANISO_THREADS if set (>= 1), otherwise hardware concurrency.
unsigned worker_count();

// Runs body(begin, end) over contiguous chunks of [0, n). Each index is owned by
// exactly one chunk, so writes to disjoint output slots need no locking.
void parallel_for(std::size_t n, const std::function<void(std::size_t, std::size_t)>& body,
                  std::size_t min_chunk = 64);

} // namespace aniso

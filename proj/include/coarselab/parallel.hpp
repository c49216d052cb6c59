#pragma once

#include <cstddef>
#include <functional>

namespace coarselab {

/// Worker count used for internal parallel loops. Defaults to the hardware
/// concurrency, capped by the COARSE_LAB_THREADS environment variable.
std::size_t thread_budget();

/// Splits [0, n) into contiguous chunks and runs fn(begin, end, chunk_index)
/// on worker threads. Chunk boundaries depend only on n and the thread
/// budget, so per-chunk results can be merged deterministically.
void parallel_chunks(std::size_t n,
                     const std::function<void(std::size_t, std::size_t, std::size_t)>& fn);

/// Number of chunks parallel_chunks will use for n items.
std::size_t chunk_count(std::size_t n);

}  // namespace coarselab

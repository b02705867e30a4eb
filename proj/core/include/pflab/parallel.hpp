#pragma once

#include <cstdint>
#include <functional>

namespace pflab {

/// Worker-thread cap, read once from PFLAB_THREADS (default: hardware
/// concurrency). Values < 1 are treated as 1.
int thread_count();

/// Chunked parallel loop over [0, n). Chunk layout depends only on n, not on
/// the thread count, so pure element-wise maps produce bit-identical results
/// regardless of PFLAB_THREADS. Falls back to a serial loop for small n.
void parallel_for(std::int64_t n, const std::function<void(std::int64_t, std::int64_t)>& body);

} // namespace pflab

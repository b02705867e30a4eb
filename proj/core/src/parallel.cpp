#include "pflab/parallel.hpp"

#include <algorithm>
#include <cstdlib>
#include <thread>
#include <vector>

namespace pflab {

int thread_count() {
    static const int n = [] {
        int hw = static_cast<int>(std::thread::hardware_concurrency());
        if (hw < 1) hw = 1;
        if (const char* env = std::getenv("PFLAB_THREADS")) {
            char* end = nullptr;
            long v = std::strtol(env, &end, 10);
            if (end != env && v >= 1) hw = std::min<long>(v, 256);
        }
        return hw;
    }();
    return n;
}

void parallel_for(std::int64_t n, const std::function<void(std::int64_t, std::int64_t)>& body) {
    if (n <= 0) return;
    const int workers = thread_count();
    // Fixed chunking: 64 chunks (or fewer for small n), independent of workers.
    constexpr std::int64_t kMinChunk = 2048;
    if (workers == 1 || n < 2 * kMinChunk) {
        body(0, n);
        return;
    }
    const std::int64_t nchunks = std::min<std::int64_t>(64, (n + kMinChunk - 1) / kMinChunk);
    const std::int64_t chunk = (n + nchunks - 1) / nchunks;
    std::vector<std::thread> pool;
    std::atomic<std::int64_t> next{0};
    const int nthreads = static_cast<int>(std::min<std::int64_t>(workers, nchunks));
    pool.reserve(static_cast<std::size_t>(nthreads));
    for (int t = 0; t < nthreads; ++t) {
        pool.emplace_back([&] {
            for (;;) {
                const std::int64_t c = next.fetch_add(1);
                if (c >= nchunks) return;
                const std::int64_t lo = c * chunk;
                const std::int64_t hi = std::min(n, lo + chunk);
                if (lo < hi) body(lo, hi);
            }
        });
    }
    for (auto& th : pool) th.join();
}

} // namespace pflab

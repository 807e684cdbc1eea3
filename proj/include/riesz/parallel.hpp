#pragma once

// Deterministic chunked parallel map: the index range is split into
// contiguous chunks, each worker owns its chunk, and any reduction happens
// chunk-by-chunk in index order afterwards. Results are bit-identical for a
// fixed thread count. Thread count resolution: explicit argument, else the
// RIESZ_THREADS environment variable, else 1.

#include <cstdlib>
#include <functional>
#include <thread>
#include <vector>

namespace riesz {

inline int resolve_threads(int requested = 0) {
    if (requested > 0) return requested;
    if (const char* env = std::getenv("RIESZ_THREADS")) {
        int v = std::atoi(env);
        if (v > 0) return v;
    }
    return 1;
}

// body(begin, end, chunk_index) runs once per chunk; chunks partition
// [0, count) in order.
inline void parallel_chunks(long long count,
                            const std::function<void(long long, long long, int)>& body,
                            int threads = 0) {
    int T = resolve_threads(threads);
    if (count <= 0) return;
    if (T > count) T = static_cast<int>(count);
    if (T <= 1) {
        body(0, count, 0);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(T);
    long long per = (count + T - 1) / T;
    for (int c = 0; c < T; ++c) {
        long long lo = c * per;
        long long hi = std::min(count, lo + per);
        if (lo >= hi) break;
        pool.emplace_back([&body, lo, hi, c] { body(lo, hi, c); });
    }
    for (auto& th : pool) th.join();
}

}  // namespace riesz

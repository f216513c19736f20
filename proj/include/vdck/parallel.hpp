#pragma once

#include <algorithm>
#include <cstddef>
#include <thread>
#include <vector>

namespace vdck {

inline unsigned effective_threads(unsigned requested) {
    if (requested != 0) return requested;
    unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : hw;
}

// Runs body(begin, end) over contiguous chunks of [0, n). Chunk boundaries
// depend only on n and the thread count, and callers fold per-chunk results
// in chunk order, so results are independent of scheduling.
template <typename Body>
void parallel_chunks(size_t n, unsigned threads, Body&& body) {
    threads = unsigned(std::max<size_t>(1, std::min<size_t>(effective_threads(threads), n ? n : 1)));
    if (threads == 1 || n < 2) {
        body(size_t(0), n);
        return;
    }
    std::vector<std::thread> pool;
    size_t chunk = (n + threads - 1) / threads;
    for (unsigned t = 0; t < threads; ++t) {
        size_t begin = std::min(n, size_t(t) * chunk);
        size_t end = std::min(n, begin + chunk);
        if (begin >= end) break;
        pool.emplace_back([&body, begin, end] { body(begin, end); });
    }
    for (auto& th : pool) th.join();
}

} // namespace vdck

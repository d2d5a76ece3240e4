#pragma once

#include <atomic>
#include <cstdlib>
#include <thread>
#include <vector>

namespace qsz {

/// Worker count: ZF_THREADS when set, hardware concurrency otherwise.
inline unsigned worker_count() {
    if (const char* env = std::getenv("ZF_THREADS")) {
        long n = std::strtol(env, nullptr, 10);
        if (n >= 1) return static_cast<unsigned>(n);
    }
    unsigned hw = std::thread::hardware_concurrency();
    return hw ? hw : 1;
}

/// Runs fn(chunk_index) for chunk_index in [0, n_chunks) on a small pool.
/// Chunk decomposition is fixed by the caller, so any per-chunk results can
/// be merged in index order independent of scheduling.
template <class Fn>
void for_each_chunk(int n_chunks, Fn&& fn) {
    unsigned workers = std::min<unsigned>(worker_count(), static_cast<unsigned>(n_chunks));
    if (workers <= 1) {
        for (int c = 0; c < n_chunks; ++c) fn(c);
        return;
    }
    std::atomic<int> next{0};
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w)
        pool.emplace_back([&] {
            for (int c = next.fetch_add(1); c < n_chunks; c = next.fetch_add(1)) fn(c);
        });
    for (auto& t : pool) t.join();
}

} // namespace qsz

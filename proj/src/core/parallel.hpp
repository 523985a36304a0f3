#pragma once

#include <atomic>
#include <cstddef>
#include <thread>
#include <vector>

namespace socio {

// Runs fn(block_index, begin, end) over fixed-size blocks of [0, n).
// The block decomposition depends only on n and block_size, never on the
// worker count, so callers that store per-block partial results and reduce
// them in block order get bit-identical output for any number of threads.
template <typename Fn>
void parallel_blocks(std::size_t n, std::size_t block_size, unsigned threads, Fn&& fn) {
    if (n == 0) return;
    if (block_size == 0) block_size = 1;
    const std::size_t n_blocks = (n + block_size - 1) / block_size;
    if (threads <= 1 || n_blocks <= 1) {
        for (std::size_t b = 0; b < n_blocks; ++b) {
            std::size_t begin = b * block_size;
            std::size_t end = begin + block_size < n ? begin + block_size : n;
            fn(b, begin, end);
        }
        return;
    }
    unsigned workers = threads;
    if (static_cast<std::size_t>(workers) > n_blocks) workers = static_cast<unsigned>(n_blocks);
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&]() {
            while (true) {
                std::size_t b = next.fetch_add(1);
                if (b >= n_blocks) break;
                std::size_t begin = b * block_size;
                std::size_t end = begin + block_size < n ? begin + block_size : n;
                fn(b, begin, end);
            }
        });
    }
    for (auto& t : pool) t.join();
}

inline std::size_t block_count(std::size_t n, std::size_t block_size) {
    if (n == 0) return 0;
    if (block_size == 0) block_size = 1;
    return (n + block_size - 1) / block_size;
}

} // namespace socio

#pragma once

#include <cstddef>
#include <thread>
#include <vector>

namespace lipuq {

/// Runs fn(chunk_index, begin, end) over [0, n) split into contiguous chunks,
/// one per worker. Chunks are indexed so callers can merge per-chunk results
/// in a fixed order, which keeps every reduction independent of the thread
/// count and of scheduling.
template <typename Fn>
void parallel_chunks(std::size_t n, int threads, Fn&& fn) {
    if (threads < 1) threads = 1;
    const std::size_t workers = std::min<std::size_t>(static_cast<std::size_t>(threads), n ? n : 1);
    if (workers <= 1 || n == 0) {
        fn(std::size_t{0}, std::size_t{0}, n);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(workers);
    const std::size_t per = n / workers;
    const std::size_t extra = n % workers;
    std::size_t begin = 0;
    for (std::size_t c = 0; c < workers; ++c) {
        const std::size_t len = per + (c < extra ? 1 : 0);
        const std::size_t end = begin + len;
        pool.emplace_back([&fn, c, begin, end] { fn(c, begin, end); });
        begin = end;
    }
    for (auto& t : pool) t.join();
}

} // namespace lipuq

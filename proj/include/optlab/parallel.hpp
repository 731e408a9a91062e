#pragma once

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace optlab::parallel {

inline constexpr uint64_t kDefaultChunk = uint64_t{1} << 14;

/// Run fn(chunk_id, begin, end) over [0, total) split into fixed-size chunks.
///
/// Chunk boundaries depend only on (total, chunk), never on the thread count,
/// so callers that store per-chunk partial results and combine them in chunk
/// order get identical output for any `threads`. fn must only touch its own
/// chunk's state.
template <typename Fn>
void for_each_chunk(uint64_t total, unsigned threads, uint64_t chunk, Fn&& fn) {
    if (total == 0) return;
    if (chunk == 0) chunk = kDefaultChunk;
    const uint64_t nchunks = (total + chunk - 1) / chunk;

    auto run_one = [&](uint64_t c) {
        fn(c, c * chunk, std::min(total, (c + 1) * chunk));
    };

    if (threads <= 1 || nchunks <= 1) {
        for (uint64_t c = 0; c < nchunks; ++c) run_one(c);
        return;
    }

    std::atomic<uint64_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    auto worker = [&] {
        for (;;) {
            const uint64_t c = next.fetch_add(1, std::memory_order_relaxed);
            if (c >= nchunks) return;
            try {
                run_one(c);
            } catch (...) {
                std::lock_guard lock(error_mutex);
                if (!error) error = std::current_exception();
                next.store(nchunks, std::memory_order_relaxed);
                return;
            }
        }
    };

    const unsigned nworkers = unsigned(std::min<uint64_t>(threads, nchunks));
    std::vector<std::thread> pool;
    pool.reserve(nworkers);
    for (unsigned w = 0; w < nworkers; ++w) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
    if (error) std::rethrow_exception(error);
}

inline uint64_t chunk_count(uint64_t total, uint64_t chunk = kDefaultChunk) {
    return total == 0 ? 0 : (total + chunk - 1) / chunk;
}

} // namespace optlab::parallel

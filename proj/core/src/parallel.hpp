#pragma once

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace jumplab::detail {

inline int worker_count() {
    const unsigned hc = std::thread::hardware_concurrency();
    return hc > 0 ? static_cast<int>(hc) : 1;
}

/// Run fn(chunk_index, begin, end) over [0,n) in fixed-size chunks. Chunk
/// boundaries do not depend on the thread count, so per-chunk outputs are
/// reproducible under any scheduling.
template <class Fn>
void for_each_chunk(long n, long chunk_size, Fn&& fn) {
    if (n <= 0) return;
    const long n_chunks = (n + chunk_size - 1) / chunk_size;
    const int workers = static_cast<int>(std::min<long>(worker_count(), n_chunks));
    if (workers <= 1) {
        for (long c = 0; c < n_chunks; ++c) {
            fn(c, c * chunk_size, std::min(n, (c + 1) * chunk_size));
        }
        return;
    }
    std::atomic<long> next{0};
    std::atomic<bool> failed{false};
    std::exception_ptr error;
    std::mutex error_mutex;
    std::vector<std::thread> pool;
    pool.reserve(static_cast<size_t>(workers));
    for (int w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            for (;;) {
                const long c = next.fetch_add(1);
                if (c >= n_chunks || failed.load(std::memory_order_relaxed)) break;
                try {
                    fn(c, c * chunk_size, std::min(n, (c + 1) * chunk_size));
                } catch (...) {
                    std::lock_guard<std::mutex> lock(error_mutex);
                    if (!error) error = std::current_exception();
                    failed.store(true, std::memory_order_relaxed);
                    break;
                }
            }
        });
    }
    for (auto& th : pool) th.join();
    if (error) std::rethrow_exception(error);
}

}  // namespace jumplab::detail

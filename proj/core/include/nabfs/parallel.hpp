#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <thread>
#include <utility>
#include <vector>

namespace nabfs {

// Resolve a worker-count request; 0 means hardware concurrency.
inline int resolve_workers(int requested) {
    if (requested > 0) return requested;
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

// Run fn(i) for every i in [0, count). Callers key all randomness off the
// index and write only to slot i, so results are identical for any worker
// count. The first exception raised is rethrown on the calling thread.
template <typename Fn>
void parallel_for(std::size_t count, int workers, Fn&& fn) {
    workers = resolve_workers(workers);
    if (workers <= 1 || count <= 1) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    const std::size_t nthreads =
        std::min<std::size_t>(static_cast<std::size_t>(workers), count);
    std::atomic<std::size_t> next{0};
    std::vector<std::exception_ptr> errors(nthreads);
    std::vector<std::thread> pool;
    pool.reserve(nthreads);
    for (std::size_t t = 0; t < nthreads; ++t) {
        pool.emplace_back([&, t] {
            try {
                for (std::size_t i; (i = next.fetch_add(1)) < count;) fn(i);
            } catch (...) {
                errors[t] = std::current_exception();
            }
        });
    }
    for (auto& th : pool) th.join();
    for (auto& err : errors) {
        if (err) std::rethrow_exception(err);
    }
}

}  // namespace nabfs

#pragma once

#include <atomic>
#include <cstdlib>
#include <exception>
#include <thread>
#include <vector>

namespace bautinlab {

/// Worker count, capped by the BAUTIN_LAB_THREADS environment variable.
inline int worker_count() {
    if (const char* env = std::getenv("BAUTIN_LAB_THREADS")) {
        int n = std::atoi(env);
        if (n >= 1) return n;
    }
    unsigned hc = std::thread::hardware_concurrency();
    return hc ? static_cast<int>(hc) : 1;
}

/// Runs fn(i) for i in [0, n). Work items write into per-index slots, so the
/// merged result is deterministic regardless of the schedule.
template <typename Fn>
void parallel_for(long n, Fn&& fn) {
    long workers = std::min<long>(worker_count(), n);
    if (workers <= 1) {
        for (long i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<long> next{0};
    std::exception_ptr err;
    std::atomic<bool> failed{false};
    std::vector<std::thread> pool;
    pool.reserve(static_cast<size_t>(workers));
    for (long w = 0; w < workers; ++w)
        pool.emplace_back([&] {
            for (;;) {
                long i = next.fetch_add(1);
                if (i >= n || failed.load()) return;
                try {
                    fn(i);
                } catch (...) {
                    if (!failed.exchange(true)) err = std::current_exception();
                    return;
                }
            }
        });
    for (auto& t : pool) t.join();
    if (err) std::rethrow_exception(err);
}

}  // namespace bautinlab

#pragma once

#include <cstdlib>
#include <functional>
#include <thread>
#include <vector>

namespace cantor {

// Worker count: explicit setting > CANTOR_RINGS_THREADS > hardware concurrency.
inline int& thread_count_ref() {
    static int count = 0;
    return count;
}

inline void set_thread_count(int n) { thread_count_ref() = n; }

inline int effective_threads() {
    if (thread_count_ref() > 0) return thread_count_ref();
    if (const char* env = std::getenv("CANTOR_RINGS_THREADS")) {
        int n = std::atoi(env);
        if (n > 0) return n;
    }
    unsigned hc = std::thread::hardware_concurrency();
    return hc ? static_cast<int>(hc) : 1;
}

// Runs fn(i) for i in [0, n); work is chunked contiguously so writers to
// disjoint slots never contend.  fn must be safe to call concurrently.
inline void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn) {
    int threads = effective_threads();
    if (threads <= 1 || n < 2) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::size_t t = std::min<std::size_t>(static_cast<std::size_t>(threads), n);
    std::vector<std::thread> pool;
    pool.reserve(t);
    std::size_t chunk = (n + t - 1) / t;
    for (std::size_t w = 0; w < t; ++w) {
        std::size_t lo = w * chunk, hi = std::min(n, lo + chunk);
        if (lo >= hi) break;
        pool.emplace_back([lo, hi, &fn] {
            for (std::size_t i = lo; i < hi; ++i) fn(i);
        });
    }
    for (auto& th : pool) th.join();
}

}  // namespace cantor

#pragma once

#include <cstdlib>
#include <functional>
#include <thread>
#include <vector>

namespace qgz3 {

/// Worker cap: QGZ3_THREADS when set (>= 1), hardware concurrency otherwise.
inline unsigned thread_budget() {
    if (const char* s = std::getenv("QGZ3_THREADS")) {
        long v = std::strtol(s, nullptr, 10);
        if (v >= 1) return static_cast<unsigned>(v);
    }
    unsigned hc = std::thread::hardware_concurrency();
    return hc ? hc : 1;
}

/// Static-chunked parallel loop over [0, n). Each index is visited exactly
/// once; callers write to disjoint slots, so results are deterministic.
template <typename Fn>
void parallel_for(int n, Fn&& fn) {
    unsigned workers = thread_budget();
    if (workers <= 1 || n < 32) {
        for (int i = 0; i < n; ++i) fn(i);
        return;
    }
    workers = std::min<unsigned>(workers, static_cast<unsigned>(n));
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
            for (int i = static_cast<int>(w); i < n; i += static_cast<int>(workers)) fn(i);
        });
    }
    for (auto& t : pool) t.join();
}

}  // namespace qgz3

#pragma once

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <functional>
#include <thread>
#include <vector>

namespace qmlbench {

/// Worker cap: QMLBENCH_THREADS when set, otherwise hardware concurrency.
inline unsigned max_threads() {
    if (const char* env = std::getenv("QMLBENCH_THREADS")) {
        long v = std::strtol(env, nullptr, 10);
        if (v >= 1) return static_cast<unsigned>(v);
    }
    unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? hw : 1;
}

/// Runs body(i) for i in [0, n). Work items must not share mutable state.
inline void parallel_for(size_t n, const std::function<void(size_t)>& body) {
    unsigned workers = std::min<size_t>(max_threads(), n);
    if (workers <= 1) {
        for (size_t i = 0; i < n; ++i) body(i);
        return;
    }
    std::atomic<size_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w)
        pool.emplace_back([&] {
            for (size_t i = next.fetch_add(1); i < n; i = next.fetch_add(1)) body(i);
        });
    for (auto& t : pool) t.join();
}

}  // namespace qmlbench

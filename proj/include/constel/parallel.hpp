#pragma once

#include <atomic>
#include <cstddef>
#include <thread>
#include <vector>

namespace constel {

inline unsigned resolve_threads(unsigned requested) {
    if (requested != 0) return requested;
    unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : hw;
}

// Work-stealing loop over [0, jobs): workers pull indices from a shared
// counter. fn(worker, index) must only touch worker-local state keyed by
// `worker`; callers merge the per-worker results afterwards in a fixed
// order so results never depend on scheduling.
template <typename Fn>
void parallel_for(std::size_t jobs, unsigned threads, Fn&& fn) {
    threads = resolve_threads(threads);
    if (threads <= 1 || jobs <= 1) {
        for (std::size_t i = 0; i < jobs; ++i) fn(0u, i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (unsigned w = 0; w < threads; ++w) {
        pool.emplace_back([&, w] {
            for (;;) {
                std::size_t i = next.fetch_add(1);
                if (i >= jobs) return;
                fn(w, i);
            }
        });
    }
    for (auto& t : pool) t.join();
}

}  // namespace constel

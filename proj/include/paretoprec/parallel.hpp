#pragma once

// Index-sharded parallel loop. Work item i only writes slot i, and any
// randomness must be derived from (seed, i), so results do not depend on
// scheduling. Thread count is capped by the PARETO_THREADS variable.

#include <atomic>
#include <cstdlib>
#include <functional>
#include <thread>
#include <vector>

namespace paretoprec {

inline unsigned thread_budget() {
    unsigned n = std::thread::hardware_concurrency();
    if (n == 0) n = 1;
    if (const char* env = std::getenv("PARETO_THREADS")) {
        const long v = std::strtol(env, nullptr, 10);
        if (v >= 1 && v < 1024) n = static_cast<unsigned>(v);
    }
    return n;
}

template <typename Fn>
void run_indexed(std::size_t n, Fn&& fn) {
    const unsigned workers = std::min<std::size_t>(thread_budget(), n ? n : 1);
    if (workers <= 1) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w)
        pool.emplace_back([&] {
            for (std::size_t i = next.fetch_add(1); i < n; i = next.fetch_add(1)) fn(i);
        });
    for (std::thread& t : pool) t.join();
}

}  // namespace paretoprec

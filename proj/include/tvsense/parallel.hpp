// Copyright 2026 TVSense Authors
//
// Licensed under the Apache License, Version 2.0

#pragma once

#include <atomic>
#include <cstddef>
#include <thread>
#include <vector>

namespace tvsense {

// Runs fn(0..n-1) over up to `jobs` threads. Callers write results into
// pre-sized slots indexed by i, so output order never depends on scheduling.
template <typename Fn>
void parallel_for(std::size_t n, int jobs, Fn&& fn) {
    if (n == 0) return;
    const std::size_t workers =
        std::min<std::size_t>(n, jobs < 1 ? 1 : static_cast<std::size_t>(jobs));
    if (workers <= 1) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t t = 0; t < workers; ++t) {
        pool.emplace_back([&] {
            for (;;) {
                const std::size_t i = next.fetch_add(1);
                if (i >= n) break;
                fn(i);
            }
        });
    }
    for (auto& th : pool) th.join();
}

}  // namespace tvsense

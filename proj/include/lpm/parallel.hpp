// Copyright 2026 The lpmorrey Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

// Minimal work sharing for independent corpus items.

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace lpm {

namespace detail {

inline std::atomic<unsigned>& thread_cap() {
    static std::atomic<unsigned> cap{0};
    return cap;
}

}  // namespace detail

/// Upper bound on worker threads; 0 means hardware concurrency.
inline void set_max_threads(unsigned n) noexcept { detail::thread_cap().store(n); }

inline unsigned max_threads() noexcept {
    const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
    const unsigned cap = detail::thread_cap().load();
    return cap == 0 ? hw : std::min(cap, hw);
}

/// Calls body(i) for i in [0, count); the first exception is rethrown after all workers stop.
template <class Body>
void parallel_for(std::size_t count, Body&& body) {
    const auto workers = static_cast<std::size_t>(std::min<std::size_t>(max_threads(), count));
    if (workers <= 1) {
        for (std::size_t i = 0; i < count; ++i) body(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    auto run = [&] {
        for (std::size_t i = next++; i < count; i = next++) {
            try {
                body(i);
            } catch (...) {
                std::lock_guard lock(error_mutex);
                if (!error) error = std::current_exception();
                next = count;
            }
        }
    };
    std::vector<std::jthread> pool;
    pool.reserve(workers - 1);
    for (std::size_t w = 1; w < workers; ++w) pool.emplace_back(run);
    run();
    pool.clear();
    if (error) std::rethrow_exception(error);
}

}  // namespace lpm

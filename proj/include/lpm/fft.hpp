// Copyright 2026 The lpmorrey Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

// Thin FFTW3 wrapper: unnormalized complex DFTs on n-dimensional cubes of side N.
// Plans are created once per (n, N, direction) under a mutex and executed through
// the new-array interface, which FFTW documents as thread-safe.

#include <fftw3.h>

#include <complex>
#include <map>
#include <memory>
#include <mutex>
#include <span>
#include <tuple>
#include <vector>

namespace lpm::fft {

enum class Direction { forward = FFTW_FORWARD, backward = FFTW_BACKWARD };

namespace detail {

struct PlanDeleter {
    void operator()(fftw_plan_s* p) const noexcept { fftw_destroy_plan(p); }
};
using PlanHandle = std::unique_ptr<fftw_plan_s, PlanDeleter>;

class PlanCache {
public:
    static PlanCache& instance() {
        static PlanCache cache;
        return cache;
    }

    fftw_plan get(int dim, int points, Direction dir) {
        std::lock_guard lock(mutex_);
        auto key = std::make_tuple(dim, points, static_cast<int>(dir));
        if (auto it = plans_.find(key); it != plans_.end()) return it->second.get();
        std::size_t total = 1;
        std::vector<int> dims(static_cast<std::size_t>(dim), points);
        for (int a = 0; a < dim; ++a) total *= static_cast<std::size_t>(points);
        std::vector<std::complex<double>> scratch(total);
        auto* buf = reinterpret_cast<fftw_complex*>(scratch.data());
        fftw_plan plan = fftw_plan_dft(dim, dims.data(), buf, buf, static_cast<int>(dir),
                                       FFTW_ESTIMATE | FFTW_UNALIGNED);
        auto [it, _] = plans_.emplace(key, PlanHandle(plan));
        return it->second.get();
    }

private:
    std::mutex mutex_;
    std::map<std::tuple<int, int, int>, PlanHandle> plans_;
};

}  // namespace detail

/// In-place unnormalized DFT: X_k = sum_x x_j exp(-+ 2 pi i j.k / N).
inline void transform(std::span<std::complex<double>> data, int dim, int points, Direction dir) {
    fftw_plan plan = detail::PlanCache::instance().get(dim, points, dir);
    auto* buf = reinterpret_cast<fftw_complex*>(data.data());
    fftw_execute_dft(plan, buf, buf);
}

}  // namespace lpm::fft

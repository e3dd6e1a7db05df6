// Copyright 2026 The lpmorrey Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

// Slow, direct reference computations used to freeze expected values. Nothing
// here calls into the transform or norm kernels it is used to check.

#include <algorithm>
#include <cmath>
#include <complex>
#include <map>
#include <vector>

#include "lpm/grid.hpp"

namespace lpm::oracle {

/// c_k = (2pi)^{-n/2} h^n sum_x f(x) e^{-ik.x}, by direct summation (n = 1 only).
inline std::vector<complex> naive_dft_1d(const std::vector<complex>& f) {
    const int N = static_cast<int>(f.size());
    const double h = kTwoPi / N;
    std::vector<complex> c(f.size());
    for (int s = 0; s < N; ++s) {
        const int k = s < N / 2 ? s : s - N;
        complex acc{};
        for (int x = 0; x < N; ++x) acc += f[static_cast<std::size_t>(x)] * std::polar(1.0, -k * h * x);
        c[static_cast<std::size_t>(s)] = acc * h / std::sqrt(kTwoPi);
    }
    return c;
}

/// (2pi)^{-n/2} sum_{a+b=m} F_a G_b over lattice frequencies, restricted to |m_i| < N/2.
inline std::map<Frequency, complex> direct_convolution(const TorusGrid& grid, const std::vector<complex>& F,
                                                       const std::vector<complex>& G) {
    std::map<Frequency, complex> out;
    const double scale = std::pow(kTwoPi, -0.5 * grid.dim());
    for (std::size_t i = 0; i < F.size(); ++i) {
        if (F[i] == complex{}) continue;
        const auto a = grid.frequency(i);
        for (std::size_t j = 0; j < G.size(); ++j) {
            if (G[j] == complex{}) continue;
            const auto b = grid.frequency(j);
            const Frequency m{a[0] + b[0], a[1] + b[1], a[2] + b[2]};
            bool inside = true;
            for (int d = 0; d < grid.dim(); ++d) inside = inside && std::abs(m[static_cast<std::size_t>(d)]) < grid.points() / 2;
            if (inside) out[m] += scale * F[i] * G[j];
        }
    }
    return out;
}

/// Morrey norm by explicit enumeration of every (scale, anchor) cube.
inline double brute_force_morrey(const GridFunction& f, double p, double q) {
    const auto& grid = f.grid();
    const int N = grid.points();
    const int n = grid.dim();
    const double h = grid.spacing();
    double best = 0.0;
    for (int L = N; L >= 1; L /= 2) {
        const double measure = std::pow(L * h, n);
        for (std::size_t anchor = 0; anchor < grid.size(); ++anchor) {
            const auto a = grid.unravel(anchor);
            double acc = 0.0;
            const int Ly = n >= 2 ? L : 1;
            const int Lz = n >= 3 ? L : 1;
            for (int x = 0; x < L; ++x)
                for (int y = 0; y < Ly; ++y)
                    for (int z = 0; z < Lz; ++z) {
                        const auto idx = grid.ravel({a[0] + x, a[1] + y, a[2] + z});
                        acc += std::pow(std::abs(f[idx]), q);
                    }
            const double v = std::pow(measure, 1.0 / p - 1.0 / q) * std::pow(acc * std::pow(h, n), 1.0 / q);
            best = std::max(best, v);
        }
    }
    return best;
}

/// Depth-independent upper bound on the Lip^alpha norm of sum_{j>=1} 2^{-j alpha} cos(2^j x):
/// sup |W| <= 1/(2^alpha - 1), and |W(x) - W(y)| <= sum_j 2^{-j alpha} min(2, 2^j d) at distance d.
inline double weierstrass_lipschitz_bound(double alpha) {
    double semi = 0.0;
    for (int t = 0; t <= 64 * 48; ++t) {
        const double d = kTwoPi / 2 * std::exp2(-t / 64.0);
        double acc = 0.0;
        for (int j = 1; j < 80; ++j) acc += std::exp2(-j * alpha) * std::min(2.0, std::ldexp(d, j));
        semi = std::max(semi, acc / std::pow(d, alpha));
    }
    // the sampled sup over d may miss the true sup by a relative step of 2^{1/64}
    return 1.0 / (std::exp2(alpha) - 1.0) + semi * std::exp2(alpha / 64.0);
}

}  // namespace lpm::oracle

// Copyright 2026 The lpmorrey Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

/*! \file
 *  \brief Morrey, Lebesgue, Besov-Morrey, Hoelder-Zygmund and Lipschitz norms.
 *
 *  Balls are replaced by periodic cubes of side 2pi 2^-m, m = 0..log2 N, anchored
 *  at every grid point. Cube sums of |f|^q are built by window doubling: the sums
 *  for side 2L are two shifted copies of the side-L sums per axis, so every level
 *  costs n additions per point and no prefix-sum subtraction is involved.
 */

#include <algorithm>
#include <cmath>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "lpm/dyadic.hpp"

namespace lpm {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

/// (p, q, r, s) with 1 <= q <= p < inf and r in [1, inf]; r == kInfinity is the sup.
struct NormParams {
    double p = 2.0;
    double q = 1.0;
    double r = 2.0;
    double s = 0.0;

    void validate() const {
        if (!(q >= 1.0) || !(q <= p) || !std::isfinite(p)) {
            throw ParameterError("Morrey exponents need 1 <= q <= p < inf (got p=" + std::to_string(p) +
                                 ", q=" + std::to_string(q) + ")");
        }
        if (!(r >= 1.0)) throw ParameterError("summation exponent r must lie in [1, inf], got " + std::to_string(r));
        if (!std::isfinite(s)) throw ParameterError("smoothness s must be finite");
    }
};

inline void validate_morrey_exponents(double p, double q) { NormParams{p, q, 1.0, 0.0}.validate(); }

/// Sliding periodic cubes at every dyadic scale of a grid.
struct CubeFamily {
    TorusGrid grid;

    explicit CubeFamily(const TorusGrid& g) : grid(g) {}

    [[nodiscard]] int max_scale() const noexcept { return grid.levels(); }
    /// Cube side in grid points at scale m.
    [[nodiscard]] int side_points(int m) const noexcept { return grid.points() >> m; }
    [[nodiscard]] double side(int m) const noexcept { return kTwoPi * std::ldexp(1.0, -m); }
    [[nodiscard]] double measure(int m) const noexcept { return std::pow(side(m), grid.dim()); }
};

struct MorreyResult {
    double value = 0.0;
    int argmax_scale = 0;             ///< scale m whose cubes attain the sup
    std::vector<double> per_scale;    ///< sup over anchors at each scale m = 0..M
};

namespace detail {

/// T[i] += T[i shifted by `shift` along `axis`], periodic.
inline void add_shifted(std::vector<double>& T, std::vector<double>& scratch, const TorusGrid& grid, int axis,
                        int shift) {
    const auto N = static_cast<std::size_t>(grid.points());
    std::size_t stride = 1;
    for (int a = grid.dim() - 1; a > axis; --a) stride *= N;
    const std::size_t block = stride * N;
    scratch.resize(T.size());
    const auto sh = static_cast<std::size_t>(shift);
    for (std::size_t base = 0; base < T.size(); base += block) {
        for (std::size_t c = 0; c < N; ++c) {
            const std::size_t c2 = (c + sh) & (N - 1);
            const double* a = T.data() + base + c * stride;
            const double* b = T.data() + base + c2 * stride;
            double* o = scratch.data() + base + c * stride;
            for (std::size_t t = 0; t < stride; ++t) o[t] = a[t] + b[t];
        }
    }
    T.swap(scratch);
}

}  // namespace detail

/// sup over cubes B of |B|^{1/p - 1/q} (sum_{x in B} |f(x)|^q h^n)^{1/q}, with per-scale detail.
inline MorreyResult morrey_profile(const GridFunction& f, double p, double q, const CubeFamily& family) {
    validate_morrey_exponents(p, q);
    require_same_grid(f.grid(), family.grid, "morrey_norm");
    const auto& grid = f.grid();
    const int M = family.max_scale();
    const double h_n = grid.cell_measure();
    const double exponent = 1.0 / p - 1.0 / q;

    std::vector<double> T(f.size()), scratch;
    for (std::size_t i = 0; i < T.size(); ++i) T[i] = std::pow(std::abs(f[i]), q);

    MorreyResult out;
    out.value = -1.0;
    out.per_scale.assign(static_cast<std::size_t>(M) + 1, 0.0);
    for (int m = M; m >= 0; --m) {
        if (m < M) {
            const int shift = family.side_points(m + 1);
            for (int axis = 0; axis < grid.dim(); ++axis) detail::add_shifted(T, scratch, grid, axis, shift);
        }
        const double peak = *std::max_element(T.begin(), T.end());
        const double v = std::pow(family.measure(m), exponent) * std::pow(h_n * peak, 1.0 / q);
        out.per_scale[static_cast<std::size_t>(m)] = v;
        if (v > out.value) {
            out.value = v;
            out.argmax_scale = m;
        }
    }
    return out;
}

inline double morrey_norm(const GridFunction& f, double p, double q, const CubeFamily& family) {
    return morrey_profile(f, p, q, family).value;
}

inline double morrey_norm(const GridFunction& f, double p, double q) {
    return morrey_norm(f, p, q, CubeFamily(f.grid()));
}

/// (sum |f|^p h^n)^{1/p}, or max |f| for p = inf.
inline double lebesgue_norm(const GridFunction& f, double p) {
    if (!(p >= 1.0)) throw ParameterError("Lebesgue exponent must be >= 1, got " + std::to_string(p));
    if (std::isinf(p)) return f.sup_norm();
    double acc = 0.0;
    for (const auto& v : f.values()) acc += std::pow(std::abs(v), p);
    return std::pow(acc * f.grid().cell_measure(), 1.0 / p);
}

/// l^r norm of nonnegative terms; r = inf gives the max.
inline double lr_norm(std::span<const double> terms, double r) {
    if (std::isinf(r)) {
        double m = 0.0;
        for (double t : terms) m = std::max(m, t);
        return m;
    }
    double acc = 0.0;
    for (double t : terms) acc += std::pow(t, r);
    return std::pow(acc, 1.0 / r);
}

struct BesovMorreyResult {
    double value = 0.0;
    std::vector<double> block_norms;  ///< ||phi_j(D) f||_{M^p_q}, j = 0..J_max
    std::vector<double> weighted;     ///< 2^{js} * block_norms[j]
};

inline BesovMorreyResult besov_morrey_profile(const GridFunction& f, const NormParams& params,
                                              const DyadicSymbolBank& bank) {
    params.validate();
    require_same_grid(f.grid(), bank.grid(), "besov_morrey_norm");
    const CubeFamily family(f.grid());
    const auto blocks = lp_decompose(f, bank);
    BesovMorreyResult out;
    for (int j = 0; j <= bank.j_max(); ++j) {
        const double b = morrey_norm(blocks.blocks[static_cast<std::size_t>(j)], params.p, params.q, family);
        out.block_norms.push_back(b);
        out.weighted.push_back(std::exp2(j * params.s) * b);
    }
    out.value = lr_norm(out.weighted, params.r);
    return out;
}

/// (sum_j (2^{js} ||phi_j(D) f||_{M^p_q})^r)^{1/r}.
inline double besov_morrey_norm(const GridFunction& f, const NormParams& params, const DyadicSymbolBank& bank) {
    return besov_morrey_profile(f, params, bank).value;
}

/// sup_j 2^{j beta} ||phi_j(D) f||_inf.
inline double holder_zygmund_norm(const GridFunction& f, double beta, const DyadicSymbolBank& bank) {
    require_same_grid(f.grid(), bank.grid(), "holder_zygmund_norm");
    const auto blocks = lp_decompose(f, bank);
    double out = 0.0;
    for (int j = 0; j <= bank.j_max(); ++j) {
        out = std::max(out, std::exp2(j * beta) * blocks.blocks[static_cast<std::size_t>(j)].sup_norm());
    }
    return out;
}

struct LipschitzResult {
    double value = 0.0;     ///< sup term + seminorm, max over real and imaginary parts
    double sup_term = 0.0;
    double seminorm = 0.0;
    bool exact = true;      ///< false when the offset set was truncated (n >= 2)
};

namespace detail {

inline std::vector<std::array<int, 3>> lipschitz_offsets(const TorusGrid& grid) {
    const int n = grid.dim();
    const int N = grid.points();
    std::vector<std::array<int, 3>> out;
    if (n == 1) {
        for (int d = 1; d <= N / 2; ++d) out.push_back({d, 0, 0});
        return out;
    }
    constexpr int kNear = 8;
    const int reach = std::min(kNear, N / 2);
    for (int x = -reach; x <= reach; ++x)
        for (int y = -reach; y <= reach; ++y)
            for (int z = (n == 3 ? -reach : 0); z <= (n == 3 ? reach : 0); ++z)
                if (x != 0 || y != 0 || z != 0) out.push_back({x, y, z});
    // Dyadic steps along axes and diagonals reach the large-separation pairs.
    for (int len = 2 * kNear; len <= N / 2; len *= 2) {
        for (int sx = -1; sx <= 1; ++sx)
            for (int sy = -1; sy <= 1; ++sy)
                for (int sz = (n == 3 ? -1 : 0); sz <= (n == 3 ? 1 : 0); ++sz)
                    if (sx != 0 || sy != 0 || sz != 0) out.push_back({sx * len, sy * len, sz * len});
    }
    return out;
}

inline double periodic_distance(const TorusGrid& grid, const std::array<int, 3>& offset) {
    const int N = grid.points();
    double d2 = 0.0;
    for (int a = 0; a < grid.dim(); ++a) {
        int o = std::abs(offset[static_cast<std::size_t>(a)]) % N;
        o = std::min(o, N - o);
        d2 += static_cast<double>(o) * o;
    }
    return std::sqrt(d2) * grid.spacing();
}

inline LipschitzResult lipschitz_real(const TorusGrid& grid, const std::vector<double>& u, double alpha) {
    LipschitzResult out;
    for (double v : u) out.sup_term = std::max(out.sup_term, std::abs(v));
    const auto offsets = lipschitz_offsets(grid);
    out.exact = grid.dim() == 1;
    const int n = grid.dim();
    for (const auto& off : offsets) {
        const double dist = periodic_distance(grid, off);
        if (dist == 0.0) continue;
        double worst = 0.0;
        if (n == 1) {
            const std::size_t N = u.size();
            const auto d = static_cast<std::size_t>(off[0]);
            for (std::size_t i = 0; i < N; ++i) worst = std::max(worst, std::abs(u[i] - u[(i + d) & (N - 1)]));
        } else {
            for (std::size_t i = 0; i < u.size(); ++i) {
                auto m = grid.unravel(i);
                for (int a = 0; a < n; ++a) m[static_cast<std::size_t>(a)] += off[static_cast<std::size_t>(a)];
                worst = std::max(worst, std::abs(u[i] - u[grid.ravel(m)]));
            }
        }
        out.seminorm = std::max(out.seminorm, worst / std::pow(dist, alpha));
    }
    out.value = out.sup_term + out.seminorm;
    return out;
}

}  // namespace detail

/// ||f||_inf + sup_{x != y} |f(x) - f(y)| / |x - y|^alpha over the periodic grid.
///
/// Exact over all pairs for n = 1. For n >= 2 the pairs are limited to offsets
/// within 8 cells plus dyadic axis/diagonal offsets, a lower bound flagged by
/// `exact == false`.
inline LipschitzResult lipschitz_profile(const GridFunction& f, double alpha) {
    if (!(alpha > 0.0 && alpha <= 1.0)) {
        throw ParameterError("Lipschitz exponent must satisfy 0 < alpha <= 1, got " + std::to_string(alpha));
    }
    std::vector<double> re(f.size()), im(f.size());
    for (std::size_t i = 0; i < f.size(); ++i) {
        re[i] = f[i].real();
        im[i] = f[i].imag();
    }
    auto lr = detail::lipschitz_real(f.grid(), re, alpha);
    if (f.max_imag() == 0.0) return lr;
    auto li = detail::lipschitz_real(f.grid(), im, alpha);
    return li.value > lr.value ? li : lr;
}

inline double lipschitz_norm(const GridFunction& f, double alpha) { return lipschitz_profile(f, alpha).value; }

}  // namespace lpm

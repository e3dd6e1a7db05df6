// Copyright 2026 The lpmorrey Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

/*! \file
 *  \brief Transforms, Fourier multipliers and aliasing-free products on the torus.
 *
 *  Scaling: forward coefficients are c_k = (2pi)^{n/2} N^{-n} DFT_k(f), the Riemann
 *  sum of (2pi)^{-n/2} * integral f(x) e^{-ik.x} dx, and the inverse is
 *  f(x) = (2pi)^{-n/2} sum_k c_k e^{ik.x}. With this choice sum |c_k|^2 equals
 *  h^n sum |f(x)|^2 exactly.
 */

#include <algorithm>
#include <cmath>
#include <iterator>
#include <limits>
#include <span>
#include <vector>

#include "lpm/fft.hpp"
#include "lpm/grid.hpp"

namespace lpm {

/// Relative threshold that defines numerical spectral support.
inline constexpr double kSupportEpsilon = 1e-12;

/// A real symbol evaluated at every FFT-ordered lattice slot of `grid`.
struct Symbol {
    TorusGrid grid;
    std::vector<double> values;

    [[nodiscard]] double operator[](std::size_t i) const noexcept { return values[i]; }

    static Symbol constant(const TorusGrid& g, double v) { return {g, std::vector<double>(g.size(), v)}; }
};

inline SpectralFunction forward_transform(const GridFunction& f) {
    const auto& grid = f.grid();
    std::vector<complex> data(f.values().begin(), f.values().end());
    require_finite(data, "forward_transform");
    fft::transform(data, grid.dim(), grid.points(), fft::Direction::forward);
    const double scale = std::pow(kTwoPi, 0.5 * grid.dim()) / static_cast<double>(grid.size());
    for (auto& c : data) c *= scale;
    return SpectralFunction(grid, std::move(data));
}

inline GridFunction inverse_transform(const SpectralFunction& F) {
    const auto& grid = F.grid();
    std::vector<complex> data(F.coeffs().begin(), F.coeffs().end());
    require_finite(data, "inverse_transform");
    fft::transform(data, grid.dim(), grid.points(), fft::Direction::backward);
    const double scale = std::pow(kTwoPi, -0.5 * grid.dim());
    for (auto& v : data) v *= scale;
    return GridFunction(grid, std::move(data));
}

inline SpectralFunction apply_multiplier(std::span<const double> symbol, const SpectralFunction& F) {
    if (symbol.size() != F.size()) {
        throw ParameterError("apply_multiplier: symbol has " + std::to_string(symbol.size()) +
                             " entries, lattice has " + std::to_string(F.size()));
    }
    std::vector<complex> out(F.coeffs().begin(), F.coeffs().end());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] *= symbol[i];
    return SpectralFunction(F.grid(), std::move(out));
}

inline SpectralFunction apply_multiplier(const Symbol& theta, const SpectralFunction& F) {
    require_same_grid(theta.grid, F.grid(), "apply_multiplier");
    return apply_multiplier(std::span<const double>(theta.values), F);
}

/// theta(D) f = F^{-1}[theta * F f].
inline GridFunction apply_multiplier(const Symbol& theta, const GridFunction& f) {
    require_same_grid(theta.grid, f.grid(), "apply_multiplier");
    return inverse_transform(apply_multiplier(theta, forward_transform(f)));
}

inline GridFunction apply_multiplier(std::span<const double> symbol, const GridFunction& f) {
    return inverse_transform(apply_multiplier(symbol, forward_transform(f)));
}

namespace detail {

/// Slot of each FFT-ordered lattice frequency inside the 2N-per-axis padded lattice.
inline std::vector<std::size_t> padded_slots(const TorusGrid& grid) {
    const TorusGrid padded(grid.dim(), 2 * grid.points());
    std::vector<std::size_t> slots(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) slots[i] = padded.slot(grid.frequency(i));
    return slots;
}

inline bool has_unpaired_component(const TorusGrid& grid, const Frequency& k) {
    for (int a = 0; a < grid.dim(); ++a) {
        if (k[static_cast<std::size_t>(a)] == -grid.points() / 2) return true;
    }
    return false;
}

}  // namespace detail

/// Coefficients of the exact product, truncated to the symmetric lattice.
///
/// Both factors are zero-padded to 2N per axis, where their product is represented
/// without wrap-around, and the result is restricted to frequencies with every
/// component in [-N/2+1, N/2-1]. The unpaired -N/2 slots are set to zero so that
/// real factors always give a real product.
inline SpectralFunction dealiased_product(const SpectralFunction& a, const SpectralFunction& b) {
    require_same_grid(a.grid(), b.grid(), "dealiased_product");
    const auto& grid = a.grid();
    const int n = grid.dim();
    const int M = 2 * grid.points();
    std::size_t padded_size = 1;
    for (int d = 0; d < n; ++d) padded_size *= static_cast<std::size_t>(M);

    const auto slots = detail::padded_slots(grid);
    std::vector<complex> pa(padded_size), pb(padded_size);
    for (std::size_t i = 0; i < grid.size(); ++i) {
        pa[slots[i]] = a[i];
        pb[slots[i]] = b[i];
    }
    fft::transform(pa, n, M, fft::Direction::backward);
    fft::transform(pb, n, M, fft::Direction::backward);
    for (std::size_t i = 0; i < padded_size; ++i) pa[i] *= pb[i];
    fft::transform(pa, n, M, fft::Direction::forward);

    const double scale = std::pow(kTwoPi, -0.5 * n) / static_cast<double>(padded_size);
    std::vector<complex> out(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
        if (detail::has_unpaired_component(grid, grid.frequency(i))) continue;
        out[i] = pa[slots[i]] * scale;
    }
    return SpectralFunction(grid, std::move(out));
}

inline GridFunction dealiased_product(const GridFunction& f, const GridFunction& g) {
    require_same_grid(f.grid(), g.grid(), "dealiased_product");
    return inverse_transform(dealiased_product(forward_transform(f), forward_transform(g)));
}

/// Sample-wise product on the N grid. Frequencies beyond the lattice wrap around.
inline GridFunction aliased_product(const GridFunction& f, const GridFunction& g) {
    return GridFunction::pointwise(f, g);
}

/// Sorted set of lattice frequencies.
class SupportSet {
public:
    SupportSet() = default;
    explicit SupportSet(std::vector<Frequency> points) : points_(std::move(points)) {
        std::sort(points_.begin(), points_.end());
        points_.erase(std::unique(points_.begin(), points_.end()), points_.end());
    }

    [[nodiscard]] bool empty() const noexcept { return points_.empty(); }
    [[nodiscard]] std::size_t size() const noexcept { return points_.size(); }
    [[nodiscard]] const std::vector<Frequency>& points() const noexcept { return points_; }
    [[nodiscard]] bool contains(const Frequency& k) const {
        return std::binary_search(points_.begin(), points_.end(), k);
    }

    /// Elements of *this that are not in `other`.
    [[nodiscard]] std::vector<Frequency> missing_from(const SupportSet& other) const {
        std::vector<Frequency> out;
        std::set_difference(points_.begin(), points_.end(), other.points_.begin(), other.points_.end(),
                            std::back_inserter(out));
        return out;
    }

    [[nodiscard]] bool subset_of(const SupportSet& other) const { return missing_from(other).empty(); }

    /// {a + b} over all pairs, without any lattice wrap-around.
    [[nodiscard]] static SupportSet minkowski_sum(const SupportSet& A, const SupportSet& B) {
        if (A.empty() || B.empty()) return SupportSet{};
        // Mark sums in a dense bounding box; |A|*|B| pairs, but only box-size memory.
        std::array<int, 3> lo{}, ext{};
        for (std::size_t d = 0; d < 3; ++d) {
            auto [amin, amax] = std::minmax_element(A.points_.begin(), A.points_.end(),
                                                    [d](const Frequency& x, const Frequency& y) { return x[d] < y[d]; });
            auto [bmin, bmax] = std::minmax_element(B.points_.begin(), B.points_.end(),
                                                    [d](const Frequency& x, const Frequency& y) { return x[d] < y[d]; });
            lo[d] = (*amin)[d] + (*bmin)[d];
            ext[d] = (*amax)[d] + (*bmax)[d] - lo[d] + 1;
        }
        std::vector<char> mark(static_cast<std::size_t>(ext[0]) * ext[1] * ext[2], 0);
        auto flat = [&](int x, int y, int z) {
            return (static_cast<std::size_t>(x - lo[0]) * ext[1] + static_cast<std::size_t>(y - lo[1])) * ext[2] +
                   static_cast<std::size_t>(z - lo[2]);
        };
        for (const auto& a : A.points_) {
            for (const auto& b : B.points_) mark[flat(a[0] + b[0], a[1] + b[1], a[2] + b[2])] = 1;
        }
        std::vector<Frequency> out;
        for (int x = 0; x < ext[0]; ++x)
            for (int y = 0; y < ext[1]; ++y)
                for (int z = 0; z < ext[2]; ++z)
                    if (mark[flat(x + lo[0], y + lo[1], z + lo[2])]) out.push_back({x + lo[0], y + lo[1], z + lo[2]});
        return SupportSet(std::move(out));
    }

    /// Largest |xi| in the set, 0 if empty.
    [[nodiscard]] double max_radius() const {
        double r = 0.0;
        for (const auto& k : points_) r = std::max(r, std::hypot(k[0], k[1], k[2]));
        return r;
    }

    [[nodiscard]] double min_radius() const {
        if (points_.empty()) return 0.0;
        double r = std::numeric_limits<double>::infinity();
        for (const auto& k : points_) r = std::min(r, std::hypot(k[0], k[1], k[2]));
        return r;
    }

private:
    std::vector<Frequency> points_;
};

/// {k : |c_k| > epsilon * max |c|}; empty for the zero function.
inline SupportSet spectral_support(const SpectralFunction& F, double epsilon = kSupportEpsilon) {
    const double peak = F.max_abs();
    std::vector<Frequency> pts;
    if (peak == 0.0) return SupportSet{};
    const double cut = epsilon * peak;
    for (std::size_t i = 0; i < F.size(); ++i) {
        if (std::abs(F[i]) > cut) pts.push_back(F.grid().frequency(i));
    }
    return SupportSet(std::move(pts));
}

}  // namespace lpm

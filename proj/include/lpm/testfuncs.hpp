// Copyright 2026 The lpmorrey Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

/*! \file
 *  \brief Seeded generators of functions with known or controllable regularity.
 *
 *  Randomness comes from SplitMix64 (Steele, Lea, Flood 2014) with Box-Muller
 *  normals, so a stream is fully specified by its 64-bit seed. Random spectra are
 *  filled by walking the lattice cube [-R, R]^n in lexicographic order, which
 *  makes the generated function independent of N as long as it fits the grid.
 */

#include <cmath>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "lpm/dyadic.hpp"
#include "lpm/norms.hpp"

namespace lpm {

class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) noexcept : state_(seed) {}

    std::uint64_t next() noexcept {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }

    /// Uniform in (0, 1): the top 53 bits, offset by half an ulp.
    double uniform() noexcept { return (static_cast<double>(next() >> 11) + 0.5) * 0x1.0p-53; }

    /// Standard normal via Box-Muller (one draw per call).
    double normal() noexcept {
        const double u1 = uniform();
        const double u2 = uniform();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(kTwoPi * u2);
    }

    double phase() noexcept { return kTwoPi * uniform(); }

private:
    std::uint64_t state_;
};

/// Child seed for item `index` of a stream rooted at `seed`.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
    SplitMix64 mix(seed ^ (0xD1B54A32D192ED03ull * (index + 1)));
    return mix.next();
}

namespace detail {

inline constexpr double kHalfSqrt2 = 0.70710678118654752440;

inline void require_tone_fits(int depth, const TorusGrid& grid, const char* who) {
    if (depth < 1) throw ParameterError(std::string(who) + ": depth must be >= 1");
    const int j_max = lattice_j_max(grid);
    if (depth > j_max - 1 || (1 << depth) >= grid.points() / 2) {
        throw ParameterError(std::string(who) + ": depth " + std::to_string(depth) + " too large for " +
                             grid.describe() + " (need depth <= J_max-1 = " + std::to_string(j_max - 1) +
                             " and 2^depth < N/2)");
    }
}

inline void require_axis(int axis, const TorusGrid& grid) {
    if (axis < 0 || axis >= grid.dim()) throw ParameterError("axis out of range: " + std::to_string(axis));
}

/// Hermitian random coefficients on {k : keep(|k|)} within |k_i| <= R, unit l2 norm.
inline SpectralFunction random_real_spectrum(const TorusGrid& grid, int R, const std::function<bool(double)>& keep,
                                             std::uint64_t seed) {
    if (R >= grid.points() / 2) throw ParameterError("random spectrum does not fit the lattice of " + grid.describe());
    SplitMix64 rng(seed);
    std::vector<complex> c(grid.size());
    const int n = grid.dim();
    const int r1 = n >= 2 ? R : 0;
    const int r2 = n >= 3 ? R : 0;
    double energy = 0.0;
    for (int a = -R; a <= R; ++a)
        for (int b = -r1; b <= r1; ++b)
            for (int d = -r2; d <= r2; ++d) {
                const Frequency k{a, b, d};
                const bool positive = a > 0 || (a == 0 && (b > 0 || (b == 0 && d > 0)));
                const bool origin = a == 0 && b == 0 && d == 0;
                if (!positive && !origin) continue;
                if (!keep(std::sqrt(double(a) * a + double(b) * b + double(d) * d))) continue;
                if (origin) {
                    const double v = rng.normal();
                    c[grid.slot(k)] = v;
                    energy += v * v;
                    continue;
                }
                const complex v(rng.normal() * kHalfSqrt2, rng.normal() * kHalfSqrt2);
                c[grid.slot(k)] = v;
                c[grid.slot({-a, -b, -d})] = std::conj(v);
                energy += 2.0 * std::norm(v);
            }
    if (energy == 0.0) throw ParameterError("random spectrum: empty frequency set on " + grid.describe());
    const double scale = 1.0 / std::sqrt(energy);
    for (auto& v : c) v *= scale;
    return SpectralFunction(grid, std::move(c));
}

/// Real part of the inverse transform; the imaginary residue of a Hermitian spectrum is roundoff.
inline GridFunction real_inverse(const SpectralFunction& F) { return inverse_transform(F).real_part(); }

}  // namespace detail

/// W(x) = sum_{j=1}^{J} 2^{-j alpha} cos(2^j x_axis).
inline GridFunction gen_weierstrass(double alpha, int depth, const TorusGrid& grid, int axis = 0) {
    if (!(alpha > 0.0 && alpha <= 1.0)) {
        throw ParameterError("weierstrass: need 0 < alpha <= 1, got " + std::to_string(alpha));
    }
    detail::require_tone_fits(depth, grid, "weierstrass");
    detail::require_axis(axis, grid);
    return GridFunction::sample(grid, [&](const std::array<double, 3>& x) {
        double acc = 0.0;
        for (int j = 1; j <= depth; ++j) acc += std::exp2(-j * alpha) * std::cos(std::ldexp(1.0, j) * x[axis]);
        return acc;
    });
}

/// sum_j 2^{-j alpha} cos(2^j x_axis + theta_j) with seeded phases theta_j.
inline GridFunction gen_weierstrass_phased(double alpha, int depth, std::uint64_t seed, const TorusGrid& grid,
                                           int axis = 0) {
    if (!(alpha > 0.0 && alpha <= 1.0)) {
        throw ParameterError("weierstrass: need 0 < alpha <= 1, got " + std::to_string(alpha));
    }
    detail::require_tone_fits(depth, grid, "weierstrass");
    detail::require_axis(axis, grid);
    SplitMix64 rng(seed);
    std::vector<double> phase(static_cast<std::size_t>(depth) + 1);
    for (auto& t : phase) t = rng.phase();
    return GridFunction::sample(grid, [&](const std::array<double, 3>& x) {
        double acc = 0.0;
        for (int j = 1; j <= depth; ++j) {
            acc += std::exp2(-j * alpha) * std::cos(std::ldexp(1.0, j) * x[axis] + phase[static_cast<std::size_t>(j)]);
        }
        return acc;
    });
}

/// sum_{j=1}^{J} 2^{-js} e^{i theta_j} e^{i 2^j x_axis}: one unimodular tone per dyadic block.
inline GridFunction gen_lacunary(double s, double p, double q, int depth, std::uint64_t seed, const TorusGrid& grid,
                                 int axis = 0) {
    validate_morrey_exponents(p, q);
    detail::require_tone_fits(depth, grid, "lacunary");
    detail::require_axis(axis, grid);
    SplitMix64 rng(seed);
    std::vector<complex> amp(static_cast<std::size_t>(depth) + 1);
    for (int j = 1; j <= depth; ++j) amp[static_cast<std::size_t>(j)] = std::polar(std::exp2(-j * s), rng.phase());
    return GridFunction::sample(grid, [&](const std::array<double, 3>& x) {
        complex acc{};
        for (int j = 1; j <= depth; ++j) {
            acc += amp[static_cast<std::size_t>(j)] * std::polar(1.0, std::ldexp(1.0, j) * x[axis]);
        }
        return acc;
    });
}

/// Real random function with spectrum inside the open annulus 2^{j-1} < |xi| < 2^{j+1}.
inline GridFunction gen_band_random(int j, std::uint64_t seed, const TorusGrid& grid) {
    if (j < 0) throw ParameterError("band_random: scale must be >= 0");
    if ((2 << j) > grid.points() / 2) {
        throw ParameterError("band_random: annulus at scale " + std::to_string(j) + " does not fit " + grid.describe());
    }
    const double inner = std::ldexp(1.0, j - 1);
    const double outer = std::ldexp(1.0, j + 1);
    const auto F = detail::random_real_spectrum(
        grid, (2 << j) - 1, [&](double r) { return r > inner && r < outer; }, seed);
    return detail::real_inverse(F);
}

/// min(d(x,0)^{-n/p}, h^{-n/p}) with the periodic distance d: the |x|^{-n/p} witness.
inline GridFunction gen_morrey_exemplar(double p, const TorusGrid& grid) {
    if (!(p > 1.0) || !std::isfinite(p)) throw ParameterError("morrey_exemplar: need 1 < p < inf");
    const double exponent = -grid.dim() / p;
    const double h = grid.spacing();
    const double cap = std::pow(h, exponent);
    return GridFunction::sample(grid, [&](const std::array<double, 3>& x) {
        double d2 = 0.0;
        for (int a = 0; a < grid.dim(); ++a) {
            const double t = std::min(x[a], kTwoPi - x[a]);
            d2 += t * t;
        }
        const double d = std::sqrt(d2);
        return d < h ? cap : std::min(cap, std::pow(d, exponent));
    });
}

enum class CollectionMode {
    annulus,       ///< f_0 in B(8), f_j in B(2^{j+3}) \ B(2^{j-1})
    ball,          ///< f_j in B(2^{j+2})
    low_ball,      ///< f_j in B(2^{j-1}), j >= 1
    high_annulus,  ///< f_j in B(2^{j+2}) \ B(2^j), j >= 1
    resonant_ball  ///< f_j in B(2^{j+1})
};

inline std::string to_string(CollectionMode m) {
    switch (m) {
        case CollectionMode::annulus: return "annulus";
        case CollectionMode::ball: return "ball";
        case CollectionMode::low_ball: return "low_ball";
        case CollectionMode::high_annulus: return "high_annulus";
        case CollectionMode::resonant_ball: return "resonant_ball";
    }
    return "?";
}

inline CollectionMode collection_mode_from_string(const std::string& s) {
    for (auto m : {CollectionMode::annulus, CollectionMode::ball, CollectionMode::low_ball,
                   CollectionMode::high_annulus, CollectionMode::resonant_ball}) {
        if (to_string(m) == s) return m;
    }
    throw ParameterError("unknown collection mode '" + s + "'");
}

/// Open spectral region {inner < |xi| < outer} prescribed for piece j.
struct BandRegion {
    double inner = -1.0;  ///< negative: no inner constraint (ball)
    double outer = 0.0;
};

inline BandRegion collection_region(CollectionMode mode, int j) {
    switch (mode) {
        case CollectionMode::annulus:
            return j == 0 ? BandRegion{-1.0, 8.0} : BandRegion{std::ldexp(1.0, j - 1), std::ldexp(1.0, j + 3)};
        case CollectionMode::ball: return {-1.0, std::ldexp(1.0, j + 2)};
        case CollectionMode::low_ball: return {-1.0, std::ldexp(1.0, j - 1)};
        case CollectionMode::high_annulus: return {std::ldexp(1.0, j), std::ldexp(1.0, j + 2)};
        case CollectionMode::resonant_ball: return {-1.0, std::ldexp(1.0, j + 1)};
    }
    return {};
}

inline int collection_first_index(CollectionMode mode) {
    return mode == CollectionMode::low_ball || mode == CollectionMode::high_annulus ? 1 : 0;
}

struct AnnulusCollection {
    CollectionMode mode = CollectionMode::annulus;
    int first = 0;                    ///< index of pieces[0]
    std::vector<GridFunction> pieces;

    [[nodiscard]] int index(std::size_t i) const noexcept { return first + static_cast<int>(i); }
};

/// Pieces f_j with the spectral supports of `mode`, scaled so 2^{js} ||f_j||_{M^p_q} = 1.
inline AnnulusCollection gen_annulus_collection(double s, double p, double q, int depth, std::uint64_t seed,
                                                const TorusGrid& grid, CollectionMode mode) {
    validate_morrey_exponents(p, q);
    const int first = collection_first_index(mode);
    if (depth < first) throw ParameterError("annulus_collection: depth must be >= " + std::to_string(first));
    const int j_max = lattice_j_max(grid);
    const double outer_max = collection_region(mode, depth).outer;
    if (depth > j_max - 3 || outer_max > grid.points() / 2) {
        throw ParameterError("annulus_collection: grid " + grid.describe() + " too coarse for depth " +
                             std::to_string(depth));
    }
    const CubeFamily family(grid);
    AnnulusCollection out{mode, first, {}};
    for (int j = first; j <= depth; ++j) {
        const auto region = collection_region(mode, j);
        const int R = static_cast<int>(std::ceil(region.outer)) - 1;
        const auto F = detail::random_real_spectrum(
            grid, R, [&](double r) { return r > region.inner && r < region.outer; },
            derive_seed(seed, static_cast<std::uint64_t>(j)));
        auto f = detail::real_inverse(F);
        const double norm = morrey_norm(f, p, q, family);
        out.pieces.push_back(complex(std::exp2(-j * s) / norm) * f);
    }
    return out;
}

}  // namespace lpm

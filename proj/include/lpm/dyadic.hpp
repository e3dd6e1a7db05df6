// Copyright 2026 The lpmorrey Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

/*! \file
 *  \brief Littlewood-Paley bump, dyadic symbol bank, analysis and synthesis.
 *
 *  The bump is radial: psi(xi) = p(|xi|) with p = 1 on [0, 6/5], p = 0 on
 *  [3/2, inf) and a C-infinity transition in between,
 *
 *      p(t) = q((3/2 - t) / (3/10)),   q(u) = B(u) / (B(u) + B(1 - u)),
 *      B(u) = exp(-1/u) for u > 0, 0 otherwise.
 *
 *  psi_j(xi) = p(2^-j |xi|), phi_0 = psi_0, phi_j = psi_j - psi_{j-1}. On the
 *  lattice every phi_j with j > J_max vanishes, so the bank stores 0..J_max.
 */

#include <cmath>
#include <string>
#include <vector>

#include "lpm/spectral.hpp"

namespace lpm {

struct BumpProfile {
    static constexpr double kInner = 6.0 / 5.0;
    static constexpr double kOuter = 3.0 / 2.0;

    [[nodiscard]] static double step(double u) noexcept { return u > 0.0 ? std::exp(-1.0 / u) : 0.0; }

    [[nodiscard]] double operator()(double t) const noexcept {
        if (t <= kInner) return 1.0;
        if (t >= kOuter) return 0.0;
        const double u = (kOuter - t) / (kOuter - kInner);
        const double a = step(u);
        const double b = step(1.0 - u);
        return a / (a + b);
    }
};

inline BumpProfile build_bump() { return {}; }

/// Smallest J with (6/5) 2^J >= sqrt(n) N / 2, so psi_J == 1 on the whole lattice.
inline int lattice_j_max(const TorusGrid& grid) {
    const double diameter = std::sqrt(static_cast<double>(grid.dim())) * grid.points() / 2.0;
    int J = 0;
    while (BumpProfile::kInner * std::ldexp(1.0, J) < diameter) ++J;
    return J;
}

class DyadicSymbolBank {
public:
    explicit DyadicSymbolBank(const TorusGrid& grid) : grid_(grid), j_max_(lattice_j_max(grid)) {
        const auto radii = grid.radii();
        const BumpProfile bump;
        psi_.reserve(static_cast<std::size_t>(j_max_) + 1);
        phi_.reserve(static_cast<std::size_t>(j_max_) + 1);
        for (int j = 0; j <= j_max_; ++j) {
            Symbol psi_j{grid, std::vector<double>(grid.size())};
            const double scale = std::ldexp(1.0, -j);
            for (std::size_t i = 0; i < radii.size(); ++i) psi_j.values[i] = bump(scale * radii[i]);
            Symbol phi_j = psi_j;
            if (j > 0) {
                const auto& prev = psi_.back().values;
                for (std::size_t i = 0; i < radii.size(); ++i) phi_j.values[i] -= prev[i];
            }
            psi_.push_back(std::move(psi_j));
            phi_.push_back(std::move(phi_j));
        }
        zero_ = Symbol::constant(grid, 0.0);
    }

    [[nodiscard]] const TorusGrid& grid() const noexcept { return grid_; }
    [[nodiscard]] int j_max() const noexcept { return j_max_; }

    /// phi_j; identically zero for j > J_max.
    [[nodiscard]] const Symbol& phi(int j) const {
        check_scale(j);
        if (j > j_max_) return zero();
        return phi_[static_cast<std::size_t>(j)];
    }

    /// psi_j; identically one for j >= J_max.
    [[nodiscard]] const Symbol& psi(int j) const {
        check_scale(j);
        return psi_[static_cast<std::size_t>(std::min(j, j_max_))];
    }

private:
    void check_scale(int j) const {
        if (j < 0) throw ParameterError("dyadic scale must be nonnegative, got " + std::to_string(j));
    }

    const Symbol& zero() const { return zero_; }

    TorusGrid grid_;
    int j_max_;
    std::vector<Symbol> psi_;
    std::vector<Symbol> phi_;
    Symbol zero_;
};

inline DyadicSymbolBank make_bank(const TorusGrid& grid) { return DyadicSymbolBank(grid); }

/// f_j = phi_j(D) f for j = 0..J_max.
struct LPBlockDecomposition {
    TorusGrid grid;
    std::vector<GridFunction> blocks;

    [[nodiscard]] int j_max() const noexcept { return static_cast<int>(blocks.size()) - 1; }
};

inline std::vector<SpectralFunction> lp_blocks_spectral(const SpectralFunction& F, const DyadicSymbolBank& bank) {
    require_same_grid(F.grid(), bank.grid(), "lp_decompose");
    std::vector<SpectralFunction> out;
    out.reserve(static_cast<std::size_t>(bank.j_max()) + 1);
    for (int j = 0; j <= bank.j_max(); ++j) out.push_back(apply_multiplier(bank.phi(j), F));
    return out;
}

inline LPBlockDecomposition lp_decompose(const GridFunction& f, const DyadicSymbolBank& bank) {
    require_same_grid(f.grid(), bank.grid(), "lp_decompose");
    const auto F = forward_transform(f);
    LPBlockDecomposition out{f.grid(), {}};
    for (const auto& block : lp_blocks_spectral(F, bank)) out.blocks.push_back(inverse_transform(block));
    return out;
}

/// Pointwise sum of blocks.
inline GridFunction lp_synthesize(const std::vector<GridFunction>& blocks) {
    if (blocks.empty()) throw ParameterError("lp_synthesize: no blocks");
    const auto& grid = blocks.front().grid();
    std::vector<complex> sum(grid.size());
    for (const auto& b : blocks) {
        require_same_grid(grid, b.grid(), "lp_synthesize");
        for (std::size_t i = 0; i < sum.size(); ++i) sum[i] += b[i];
    }
    return GridFunction(grid, std::move(sum));
}

inline GridFunction lp_synthesize(const LPBlockDecomposition& d) { return lp_synthesize(d.blocks); }

/// Radial interval arithmetic for phi_j(D)[phi_k(D) psi_{l-2}(D) f * phi_l(D) g].
struct ProductSupportPrediction {
    double inner = 0.0;             ///< product spectrum lies in inner <= |xi| <= outer
    double outer = 0.0;
    bool low_factor_vanishes = false;  ///< phi_k * psi_{l-2} == 0 identically
    bool must_vanish = false;
};

inline ProductSupportPrediction predict_product_support(int j, int k, int l) {
    if (j < 0 || k < 0 || l < 2) {
        throw ParameterError("predict_product_support: need j, k >= 0 and l >= 2 (got j=" + std::to_string(j) +
                             ", k=" + std::to_string(k) + ", l=" + std::to_string(l) + ")");
    }
    constexpr double lo = BumpProfile::kInner / 2.0;  // phi_m vanishes for |xi| <= (3/5) 2^m, m >= 1
    constexpr double hi = BumpProfile::kOuter;        // and for |xi| >= (3/2) 2^m
    const double two_k = std::ldexp(1.0, k);
    const double two_l = std::ldexp(1.0, l);
    const double two_j = std::ldexp(1.0, j);

    ProductSupportPrediction out;
    out.inner = std::max(0.0, lo * two_l - hi * two_k);
    out.outer = hi * two_k + hi * two_l;
    out.low_factor_vanishes = k >= 1 && lo * two_k >= hi * std::ldexp(1.0, l - 2);
    const bool below = hi * two_j <= out.inner;
    const bool above = j >= 1 && lo * two_j >= out.outer;
    out.must_vanish = out.low_factor_vanishes || below || above;
    return out;
}

}  // namespace lpm

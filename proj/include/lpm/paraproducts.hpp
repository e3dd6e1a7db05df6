// Copyright 2026 The lpmorrey Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

/*! \file
 *  \brief Bony paraproducts, the resonant operator and the commutators built on them.
 *
 *      f <= g = sum_{j>=2} psi_{j-2}(D) f * phi_j(D) g          (low-high)
 *      f >= g = sum_{j>=2} phi_j(D) f * psi_{j-2}(D) g          (high-low)
 *      f (.) g = sum_{|j-k|<=1} phi_j(D) f * phi_k(D) g          (resonant)
 *
 *  Every sum stops at J_max, beyond which all blocks vanish on the lattice. All
 *  products are dealiased and accumulated in coefficient space; the grid-level
 *  entry points perform one inverse transform per operator.
 */

#include <vector>

#include "lpm/dyadic.hpp"

namespace lpm {

namespace detail {

inline bool is_zero(const SpectralFunction& F) { return F.max_abs() == 0.0; }

/// Dealiased product that short-circuits when either factor is identically zero.
inline void accumulate_product(SpectralFunction& acc, const SpectralFunction& a, const SpectralFunction& b) {
    if (is_zero(a) || is_zero(b)) return;
    acc += dealiased_product(a, b);
}

}  // namespace detail

inline SpectralFunction para_low_high(const SpectralFunction& F, const SpectralFunction& G,
                                      const DyadicSymbolBank& bank) {
    require_same_grid(F.grid(), G.grid(), "para_low_high");
    require_same_grid(F.grid(), bank.grid(), "para_low_high");
    SpectralFunction acc(F.grid());
    for (int j = 2; j <= bank.j_max(); ++j) {
        detail::accumulate_product(acc, apply_multiplier(bank.psi(j - 2), F), apply_multiplier(bank.phi(j), G));
    }
    return acc;
}

inline SpectralFunction para_high_low(const SpectralFunction& F, const SpectralFunction& G,
                                      const DyadicSymbolBank& bank) {
    require_same_grid(F.grid(), G.grid(), "para_high_low");
    require_same_grid(F.grid(), bank.grid(), "para_high_low");
    SpectralFunction acc(F.grid());
    for (int j = 2; j <= bank.j_max(); ++j) {
        detail::accumulate_product(acc, apply_multiplier(bank.phi(j), F), apply_multiplier(bank.psi(j - 2), G));
    }
    return acc;
}

inline SpectralFunction resonant(const SpectralFunction& F, const SpectralFunction& G, const DyadicSymbolBank& bank) {
    require_same_grid(F.grid(), G.grid(), "resonant");
    require_same_grid(F.grid(), bank.grid(), "resonant");
    const auto fb = lp_blocks_spectral(F, bank);
    const auto gb = lp_blocks_spectral(G, bank);
    SpectralFunction acc(F.grid());
    for (int j = 0; j <= bank.j_max(); ++j) {
        const auto J = static_cast<std::size_t>(j);
        detail::accumulate_product(acc, fb[J], gb[J]);
        if (j >= 1) {
            detail::accumulate_product(acc, fb[J - 1], gb[J]);
            detail::accumulate_product(acc, fb[J], gb[J - 1]);
        }
    }
    return acc;
}

inline GridFunction para_low_high(const GridFunction& f, const GridFunction& g, const DyadicSymbolBank& bank) {
    return inverse_transform(para_low_high(forward_transform(f), forward_transform(g), bank));
}

inline GridFunction para_high_low(const GridFunction& f, const GridFunction& g, const DyadicSymbolBank& bank) {
    return inverse_transform(para_high_low(forward_transform(f), forward_transform(g), bank));
}

inline GridFunction resonant(const GridFunction& f, const GridFunction& g, const DyadicSymbolBank& bank) {
    return inverse_transform(resonant(forward_transform(f), forward_transform(g), bank));
}

/// f g = (f <= g) + (f >= g) + (f (.) g).
struct BonySplit {
    GridFunction low_high;
    GridFunction high_low;
    GridFunction resonant;

    [[nodiscard]] GridFunction total() const { return low_high + high_low + resonant; }
};

inline BonySplit bony_decompose(const GridFunction& f, const GridFunction& g, const DyadicSymbolBank& bank) {
    const auto F = forward_transform(f);
    const auto G = forward_transform(g);
    return {inverse_transform(para_low_high(F, G, bank)), inverse_transform(para_high_low(F, G, bank)),
            inverse_transform(resonant(F, G, bank))};
}

/// (f <= g) (.) h - f (g (.) h).
inline SpectralFunction commutator_thm2(const SpectralFunction& F, const SpectralFunction& G,
                                        const SpectralFunction& H, const DyadicSymbolBank& bank) {
    require_same_grid(F.grid(), H.grid(), "commutator_thm2");
    auto out = resonant(para_low_high(F, G, bank), H, bank);
    out -= dealiased_product(F, resonant(G, H, bank));
    return out;
}

inline GridFunction commutator_thm2(const GridFunction& f, const GridFunction& g, const GridFunction& h,
                                    const DyadicSymbolBank& bank) {
    return inverse_transform(commutator_thm2(forward_transform(f), forward_transform(g), forward_transform(h), bank));
}

namespace detail {

inline void require_block_scale(int j, const DyadicSymbolBank& bank, const char* op) {
    if (j < 0 || j > bank.j_max()) {
        throw ParameterError(std::string(op) + ": scale " + std::to_string(j) + " outside [0, " +
                             std::to_string(bank.j_max()) + "]");
    }
}

}  // namespace detail

/// phi_j(D)[F G] - F phi_j(D) G.
inline SpectralFunction block_commutator(const SpectralFunction& F, const SpectralFunction& G, int j,
                                         const DyadicSymbolBank& bank) {
    require_same_grid(F.grid(), G.grid(), "block_commutator");
    require_same_grid(F.grid(), bank.grid(), "block_commutator");
    detail::require_block_scale(j, bank, "block_commutator");
    auto out = apply_multiplier(bank.phi(j), dealiased_product(F, G));
    out -= dealiased_product(F, apply_multiplier(bank.phi(j), G));
    return out;
}

inline GridFunction block_commutator(const GridFunction& F, const GridFunction& G, int j,
                                     const DyadicSymbolBank& bank) {
    return inverse_transform(block_commutator(forward_transform(F), forward_transform(G), j, bank));
}

/// phi_j(D)[F <= G] - F phi_j(D) G.
inline SpectralFunction para_commutator(const SpectralFunction& F, const SpectralFunction& G, int j,
                                        const DyadicSymbolBank& bank) {
    require_same_grid(F.grid(), G.grid(), "para_commutator");
    require_same_grid(F.grid(), bank.grid(), "para_commutator");
    detail::require_block_scale(j, bank, "para_commutator");
    auto out = apply_multiplier(bank.phi(j), para_low_high(F, G, bank));
    out -= dealiased_product(F, apply_multiplier(bank.phi(j), G));
    return out;
}

inline GridFunction para_commutator(const GridFunction& F, const GridFunction& G, int j,
                                    const DyadicSymbolBank& bank) {
    return inverse_transform(para_commutator(forward_transform(F), forward_transform(G), j, bank));
}

}  // namespace lpm

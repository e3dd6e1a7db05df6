// Copyright 2026 The lpmorrey Authors
// SPDX-License-Identifier: Apache-2.0

#include <catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "lpm/paraproducts.hpp"

using namespace lpm;

namespace {

/// Real, band-limited random function with no -N/2 component.
GridFunction random_real(const TorusGrid& grid, unsigned seed, double radius = 1e300) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> nd;
    std::vector<complex> v(grid.size());
    for (auto& x : v) x = nd(rng);
    const auto F = forward_transform(GridFunction(grid, v));
    std::vector<complex> c(F.coeffs().begin(), F.coeffs().end());
    for (std::size_t i = 0; i < c.size(); ++i)
        if (grid.radius(i) > radius || detail::has_unpaired_component(grid, grid.frequency(i))) c[i] = 0.0;
    return inverse_transform(SpectralFunction(grid, c)).real_part();
}

GridFunction random_complex(const TorusGrid& grid, unsigned seed) {
    return random_real(grid, seed) + complex(0.0, 1.0) * random_real(grid, seed + 7919);
}

GridFunction tone(const TorusGrid& g, double k) {
    return GridFunction::sample(g, [k](auto x) { return std::polar(1.0, k * x[0]); });
}

GridFunction constant(const TorusGrid& g, complex c) {
    return GridFunction::sample(g, [c](auto) { return c; });
}

double max_diff(const GridFunction& a, const GridFunction& b) { return (a - b).sup_norm(); }

/// sum over block pairs (k, j) selected by `take`, each pair dealiased separately.
template <class Pred>
GridFunction block_pair_sum(const GridFunction& f, const GridFunction& g, const DyadicSymbolBank& bank, Pred take) {
    const auto fb = lp_decompose(f, bank);
    const auto gb = lp_decompose(g, bank);
    GridFunction acc(f.grid());
    for (int k = 0; k <= bank.j_max(); ++k)
        for (int j = 0; j <= bank.j_max(); ++j)
            if (take(k, j))
                acc = acc + dealiased_product(fb.blocks[static_cast<std::size_t>(k)], gb.blocks[static_cast<std::size_t>(j)]);
    return acc;
}

}  // namespace

TEST_CASE("paraproducts vanish on constants", "[para]") {
    const TorusGrid g(1, 256);
    const auto bank = make_bank(g);
    const auto f = random_complex(g, 1);
    const auto c = constant(g, complex(1.5, -0.5));
    CHECK(para_low_high(f, c, bank).sup_norm() <= 1e-14);
    CHECK(para_high_low(c, f, bank).sup_norm() <= 1e-14);
}

TEST_CASE("single-term forcing", "[para]") {
    const TorusGrid g(1, 256);
    const auto bank = make_bank(g);
    const auto lh = para_low_high(tone(g, 1.0), tone(g, 32.0), bank);
    CHECK(max_diff(lh, tone(g, 33.0)) <= 1e-12);

    const auto t16 = tone(g, 16.0);
    const auto split = bony_decompose(t16, t16, bank);
    CHECK(max_diff(split.resonant, tone(g, 32.0)) <= 1e-12);
    CHECK(split.low_high.sup_norm() <= 1e-13);
    CHECK(split.high_low.sup_norm() <= 1e-13);

    const auto pair = bony_decompose(tone(g, 8.0), tone(g, 64.0), bank);
    CHECK(max_diff(pair.low_high, tone(g, 72.0)) <= 1e-12);
    CHECK(pair.high_low.sup_norm() <= 1e-13);
    CHECK(pair.resonant.sup_norm() <= 1e-13);

    const auto c = resonant(constant(g, 2.0), constant(g, complex(0.0, 3.0)), bank);
    CHECK(max_diff(c, constant(g, complex(0.0, 6.0))) <= 1e-12);
}

TEST_CASE("paraproducts match block-pair oracles", "[para][property]") {
    const TorusGrid g(1, 256);
    const auto bank = make_bank(g);
    for (unsigned seed = 0; seed < 4; ++seed) {
        const auto f = random_complex(g, 10 + seed);
        const auto h = random_complex(g, 20 + seed);
        const double scale = dealiased_product(f, h).sup_norm();
        const auto lh = block_pair_sum(f, h, bank, [](int k, int j) { return j >= k + 2; });
        const auto hl = block_pair_sum(f, h, bank, [](int k, int j) { return k >= j + 2; });
        const auto rs = block_pair_sum(f, h, bank, [](int k, int j) { return std::abs(k - j) <= 1; });
        CHECK(max_diff(para_low_high(f, h, bank), lh) <= 1e-11 * scale);
        CHECK(max_diff(para_high_low(f, h, bank), hl) <= 1e-11 * scale);
        CHECK(max_diff(resonant(f, h, bank), rs) <= 1e-11 * scale);
        CHECK(max_diff(para_high_low(f, h, bank), para_low_high(h, f, bank)) <= 1e-12 * scale);
    }
}

TEST_CASE("Bony identity", "[para][property]") {
    for (auto [n, N] : {std::pair{1, 1024}, {2, 32}, {3, 16}}) {
        const TorusGrid g(n, N);
        const auto bank = make_bank(g);
        for (unsigned seed = 0; seed < (n == 1 ? 20u : 4u); ++seed) {
            const auto f = random_complex(g, 100 + seed);
            const auto h = random_complex(g, 200 + seed);
            const auto prod = dealiased_product(f, h);
            CHECK(max_diff(bony_decompose(f, h, bank).total(), prod) <= 1e-10 * prod.sup_norm());
        }
        const auto h = random_complex(g, 5);
        const auto one = bony_decompose(constant(g, 1.0), h, bank).total();
        CHECK(max_diff(one, h) <= 1e-10 * h.sup_norm());
    }
}

TEST_CASE("bilinearity and real closure", "[para][property]") {
    const TorusGrid g(1, 128);
    const auto bank = make_bank(g);
    const auto f1 = random_complex(g, 1), f2 = random_complex(g, 2), h = random_complex(g, 3), k = random_complex(g, 4);
    const complex a(0.7, -1.3), b(-2.1, 0.4);
    const auto mix = a * f1 + b * f2;
    const double tol = 1e-12 * 10;
    auto check_linear = [&](auto op) {
        const auto lhs = op(mix);
        const auto rhs = a * op(f1) + b * op(f2);
        CHECK(max_diff(lhs, rhs) <= tol * std::max(1.0, rhs.sup_norm()));
    };
    check_linear([&](const GridFunction& x) { return para_low_high(x, h, bank); });
    check_linear([&](const GridFunction& x) { return para_low_high(h, x, bank); });
    check_linear([&](const GridFunction& x) { return para_high_low(x, h, bank); });
    check_linear([&](const GridFunction& x) { return resonant(h, x, bank); });
    check_linear([&](const GridFunction& x) { return commutator_thm2(x, h, k, bank); });
    check_linear([&](const GridFunction& x) { return commutator_thm2(h, x, k, bank); });
    check_linear([&](const GridFunction& x) { return commutator_thm2(h, k, x, bank); });
    check_linear([&](const GridFunction& x) { return block_commutator(x, h, 3, bank); });
    check_linear([&](const GridFunction& x) { return para_commutator(h, x, 4, bank); });

    const auto r1 = random_real(g, 8), r2 = random_real(g, 9), r3 = random_real(g, 10);
    CHECK(para_low_high(r1, r2, bank).max_imag() <= 1e-12);
    CHECK(resonant(r1, r2, bank).max_imag() <= 1e-12);
    CHECK(commutator_thm2(r1, r2, r3, bank).max_imag() <= 1e-12);
    CHECK(block_commutator(r1, r2, 3, bank).max_imag() <= 1e-12);
    CHECK(para_commutator(r1, r2, 3, bank).max_imag() <= 1e-12);
}

TEST_CASE("summand spectral localization", "[para]") {
    const TorusGrid g(1, 512);
    const auto bank = make_bank(g);
    const auto f = forward_transform(random_complex(g, 31));
    const auto h = forward_transform(random_complex(g, 32));
    for (int j = 2; j <= bank.j_max(); ++j) {
        const auto term = dealiased_product(apply_multiplier(bank.psi(j - 2), f), apply_multiplier(bank.phi(j), h));
        const auto S = spectral_support(term);
        if (S.empty()) continue;
        const double two_j = std::ldexp(1.0, j);
        CHECK(S.min_radius() >= 0.6 * two_j - 1.5 * two_j / 4);
        CHECK(S.max_radius() <= 1.5 * two_j + 1.5 * two_j / 4);
    }
    for (int j = 0; j <= bank.j_max(); ++j) {
        for (int k = std::max(0, j - 1); k <= std::min(bank.j_max(), j + 1); ++k) {
            const auto term = dealiased_product(apply_multiplier(bank.phi(j), f), apply_multiplier(bank.phi(k), h));
            const auto S = spectral_support(term);
            if (!S.empty()) CHECK(S.max_radius() <= std::ldexp(1.0, std::max(j, k) + 2));
        }
    }
}

TEST_CASE("commutator_thm2 with a constant middle factor", "[para]") {
    const TorusGrid g(1, 256);
    const auto bank = make_bank(g);
    const auto f = random_real(g, 3, 40.0);
    const complex c(1.25, 0.0);
    const auto cg = constant(g, c);
    // high-frequency h: g (.) h has no block-0 diagonal term, so both sides vanish
    const auto h_high = apply_multiplier(bank.phi(4), random_real(g, 4));
    CHECK(commutator_thm2(f, cg, h_high, bank).sup_norm() <= 1e-12);
    // general h: the result is -c f (phi_0 h + phi_1 h)
    const auto h = random_real(g, 5);
    const auto low = apply_multiplier(bank.phi(0), h) + apply_multiplier(bank.phi(1), h);
    const auto expect = complex(-1.0) * c * dealiased_product(f, low);
    CHECK(max_diff(commutator_thm2(f, cg, h, bank), expect) <= 1e-12 * std::max(1.0, expect.sup_norm()));
    CHECK(std::isfinite(commutator_thm2(constant(g, 1.0), random_real(g, 6), h, bank).sup_norm()));
}

TEST_CASE("block and para commutators", "[para]") {
    const TorusGrid g(1, 256);
    const auto bank = make_bank(g);
    const auto G = random_complex(g, 1);
    const auto c = constant(g, complex(0.5, 2.0));
    for (int j = 0; j <= bank.j_max(); ++j) CHECK(block_commutator(c, G, j, bank).sup_norm() <= 1e-12);
    for (int j = 2; j <= bank.j_max(); ++j) CHECK(para_commutator(random_complex(g, 2), c, j, bank).sup_norm() <= 1e-12);
    for (int j = 4; j <= bank.j_max(); ++j) CHECK(para_commutator(c, G, j, bank).sup_norm() <= 1e-10);
    CHECK_THROWS_AS(block_commutator(c, G, -1, bank), ParameterError);
    CHECK_THROWS_AS(para_commutator(c, G, bank.j_max() + 1, bank), ParameterError);
    CHECK_THROWS_AS(block_commutator(c, GridFunction(TorusGrid(1, 64)), 1, bank), GridMismatch);
}

TEST_CASE("block commutator of cos x with a tone has a closed form", "[para]") {
    // phi_j[cos x e^{ikx}] - cos x phi_j e^{ikx}
    //   = (phi_j(k+1) - phi_j(k)) e^{i(k+1)x} / 2 + (phi_j(k-1) - phi_j(k)) e^{i(k-1)x} / 2
    const TorusGrid g(1, 4096);
    const auto bank = make_bank(g);
    const auto cosx = GridFunction::sample(g, [](auto x) { return std::cos(x[0]); });
    std::vector<double> worst;
    for (int j = 3; j <= bank.j_max() - 2; ++j) {
        const auto& phi = bank.phi(j).values;
        auto at = [&](int k) { return phi[g.slot({k, 0, 0})]; };
        double sup = 0.0;
        const int two_j = 1 << j;
        for (int k = two_j / 2; k <= 2 * two_j; k += std::max(1, two_j / 32)) {
            const double up = at(k + 1) - at(k), down = at(k - 1) - at(k);
            const auto expect = GridFunction::sample(g, [&](auto x) {
                return 0.5 * up * std::polar(1.0, (k + 1) * x[0]) + 0.5 * down * std::polar(1.0, (k - 1) * x[0]);
            });
            const auto got = block_commutator(cosx, tone(g, k), j, bank);
            CHECK(max_diff(got, expect) <= 1e-12);
            CHECK_THAT(got.sup_norm(), Catch::Matchers::WithinAbs(0.5 * (std::abs(up) + std::abs(down)), 1e-12));
        }
        for (int k = 1; k < g.points() / 2 - 1; ++k) sup = std::max(sup, 0.5 * (std::abs(at(k + 1) - at(k)) + std::abs(at(k - 1) - at(k))));
        worst.push_back(sup);
    }
    // the symbol slope scales like 2^{-j} once the transition band spans many lattice points (j >= 6)
    for (std::size_t i = 4; i < worst.size(); ++i) {
        CHECK(worst[i] <= worst[i - 1] * 0.5 * 1.1);
        CHECK(worst[i] >= worst[i - 1] * 0.5 * 0.9);
    }
}

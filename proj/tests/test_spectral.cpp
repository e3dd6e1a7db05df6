// Copyright 2026 The lpmorrey Authors
// SPDX-License-Identifier: Apache-2.0

#include <catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "lpm/dyadic.hpp"
#include "lpm/spectral.hpp"
#include "oracles.hpp"

using namespace lpm;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

const double kSqrt2Pi = std::sqrt(kTwoPi);

GridFunction random_function(const TorusGrid& grid, unsigned seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> g;
    std::vector<complex> v(grid.size());
    for (auto& x : v) x = complex(g(rng), g(rng));
    return GridFunction(grid, std::move(v));
}

double max_abs_diff(const GridFunction& a, const GridFunction& b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

}  // namespace

TEST_CASE("grid invariants", "[spectral]") {
    CHECK_THROWS_AS(TorusGrid(1, 12), ParameterError);
    CHECK_THROWS_AS(TorusGrid(1, 4), ParameterError);
    CHECK_THROWS_AS(TorusGrid(4, 8), ParameterError);
    const TorusGrid g(2, 16);
    CHECK(g.size() == 256);
    CHECK(g.frequency(g.slot({-8, 7, 0})) == Frequency{-8, 7, 0});
    CHECK_THROWS_AS(GridFunction(g, std::vector<complex>(10)), ParameterError);
}

TEST_CASE("non-finite samples are rejected with their index", "[spectral]") {
    const TorusGrid g(1, 16);
    std::vector<complex> v(16, 1.0);
    v[5] = complex(std::nan(""), 0.0);
    try {
        GridFunction f(g, v);
        FAIL("expected NonFiniteValue");
    } catch (const NonFiniteValue& e) {
        CHECK(e.index() == 5);
        CHECK_THAT(std::string(e.what()), Catch::Matchers::ContainsSubstring("index 5"));
    }
}

TEST_CASE("forward transform of constants and tones", "[spectral]") {
    const TorusGrid g(1, 64);
    const auto one = GridFunction::sample(g, [](auto) { return 1.0; });
    const auto c = forward_transform(one);
    CHECK_THAT(c.at({0, 0, 0}).real(), WithinRel(kSqrt2Pi, 1e-14));
    for (std::size_t i = 1; i < c.size(); ++i) CHECK(std::abs(c[i]) < 1e-13);

    const auto tone = GridFunction::sample(g, [](auto x) { return std::polar(1.0, 3.0 * x[0]); });
    const auto t = forward_transform(tone);
    CHECK_THAT(std::abs(t.at({3, 0, 0})), WithinRel(kSqrt2Pi, 1e-14));
    CHECK(spectral_support(t).points() == std::vector<Frequency>{{3, 0, 0}});
}

TEST_CASE("forward transform matches a direct DFT summation", "[spectral]") {
    const TorusGrid g(1, 64);
    const auto bump = GridFunction::sample(g, [](auto x) { return std::exp(-4.0 * (x[0] - 3.0) * (x[0] - 3.0)); });
    const auto ref = oracle::naive_dft_1d({bump.values().begin(), bump.values().end()});
    const auto c = forward_transform(bump);
    for (std::size_t i = 0; i < c.size(); ++i) CHECK(std::abs(c[i] - ref[i]) < 1e-12);
}

TEST_CASE("inverse transform", "[spectral]") {
    const TorusGrid g(1, 64);
    std::vector<complex> c(64);
    c[g.slot({0, 0, 0})] = kSqrt2Pi;
    const auto one = inverse_transform(SpectralFunction(g, c));
    for (const auto& v : one.values()) CHECK(std::abs(v - 1.0) < 1e-14);

    std::vector<complex> d(64);
    d[g.slot({3, 0, 0})] = kSqrt2Pi / 2;
    d[g.slot({-3, 0, 0})] = kSqrt2Pi / 2;
    const auto cos3 = inverse_transform(SpectralFunction(g, d));
    for (std::size_t i = 0; i < 64; ++i) CHECK(std::abs(cos3[i] - std::cos(3.0 * g.coordinate(i, 0))) < 1e-14);
}

TEST_CASE("round trip and Parseval across dimensions", "[spectral][property]") {
    for (auto [n, N] : {std::pair{1, 256}, {2, 32}, {3, 16}}) {
        const TorusGrid g(n, N);
        for (unsigned seed = 1; seed <= 5; ++seed) {
            const auto f = random_function(g, seed);
            const auto F = forward_transform(f);
            const auto back = inverse_transform(F);
            CHECK(max_abs_diff(back, f) <= 1e-10 * f.sup_norm());

            double grid_energy = 0.0, coeff_energy = 0.0;
            for (const auto& v : f.values()) grid_energy += std::norm(v);
            grid_energy *= g.cell_measure();
            for (const auto& c : F.coeffs()) coeff_energy += std::norm(c);
            CHECK_THAT(coeff_energy, WithinRel(grid_energy, 1e-10));

            const auto random_coeffs = forward_transform(random_function(g, seed + 100));
            const auto again = forward_transform(inverse_transform(random_coeffs));
            double err = 0.0;
            for (std::size_t i = 0; i < again.size(); ++i) err = std::max(err, std::abs(again[i] - random_coeffs[i]));
            CHECK(err <= 1e-12 * random_coeffs.max_abs() * 10);
        }
    }
}

TEST_CASE("apply_multiplier", "[spectral]") {
    const TorusGrid g(1, 64);
    const auto f = random_function(g, 3);
    CHECK(max_abs_diff(apply_multiplier(Symbol::constant(g, 1.0), f), f) < 1e-13);
    CHECK(apply_multiplier(Symbol::constant(g, 0.0), f).sup_norm() == 0.0);

    const auto bank = make_bank(g);
    const auto tone = GridFunction::sample(g, [](auto x) { return std::polar(1.0, 3.0 * x[0]); });
    CHECK(max_abs_diff(apply_multiplier(bank.psi(2), tone), tone) < 1e-14);

    const std::vector<double> short_symbol(10, 1.0);
    CHECK_THROWS_AS(apply_multiplier(std::span<const double>(short_symbol), f), ParameterError);
    CHECK_THROWS_AS(apply_multiplier(Symbol::constant(TorusGrid(1, 32), 1.0), f), GridMismatch);

    const auto real_f = random_function(g, 4).real_part();
    CHECK(apply_multiplier(bank.phi(3), real_f).max_imag() <= 1e-12);
}

TEST_CASE("dealiased product of tones and identities", "[spectral]") {
    const TorusGrid g(1, 64);
    const auto e3 = GridFunction::sample(g, [](auto x) { return std::polar(1.0, 3.0 * x[0]); });
    const auto e5 = GridFunction::sample(g, [](auto x) { return std::polar(1.0, 5.0 * x[0]); });
    const auto prod = dealiased_product(e3, e5);
    for (std::size_t i = 0; i < g.size(); ++i) CHECK(std::abs(prod[i] - std::polar(1.0, 8.0 * g.coordinate(i, 0))) < 1e-13);
    CHECK(spectral_support(forward_transform(prod)).points() == std::vector<Frequency>{{8, 0, 0}});

    const auto one = GridFunction::sample(g, [](auto) { return 1.0; });
    auto smooth = random_function(g, 9);
    // drop the unpaired Nyquist slot, which the product always discards
    auto S = forward_transform(smooth);
    std::vector<complex> c(S.coeffs().begin(), S.coeffs().end());
    c[g.slot({-32, 0, 0})] = 0.0;
    smooth = inverse_transform(SpectralFunction(g, c));
    CHECK(max_abs_diff(dealiased_product(one, smooth), smooth) <= 1e-12 * smooth.sup_norm());

    CHECK_THROWS_AS(dealiased_product(one, GridFunction(TorusGrid(1, 32))), GridMismatch);
}

TEST_CASE("dealiased product matches a direct convolution", "[spectral][property]") {
    for (auto [n, N] : {std::pair{1, 64}, {1, 32}, {2, 16}}) {
        const TorusGrid g(n, N);
        for (unsigned seed = 0; seed < 4; ++seed) {
            const auto F = forward_transform(random_function(g, 10 + seed));
            const auto G = forward_transform(random_function(g, 20 + seed));
            const auto P = dealiased_product(F, G);
            const auto ref = oracle::direct_convolution(g, {F.coeffs().begin(), F.coeffs().end()},
                                                        {G.coeffs().begin(), G.coeffs().end()});
            double scale = 0.0;
            for (const auto& [k, v] : ref) scale = std::max(scale, std::abs(v));
            for (std::size_t i = 0; i < P.size(); ++i) {
                const auto k = g.frequency(i);
                const auto it = ref.find(k);
                const complex expect = it == ref.end() ? complex{} : it->second;
                CHECK(std::abs(P[i] - expect) <= 1e-10 * scale);
            }
        }
    }
}

TEST_CASE("product support obeys the Minkowski sum exactly", "[spectral]") {
    const TorusGrid g(1, 64);
    std::mt19937_64 rng(5);
    std::normal_distribution<double> nd;
    std::vector<complex> a(64), b(64);
    for (int k = -2; k <= 2; ++k) a[g.slot({k, 0, 0})] = complex(nd(rng), nd(rng));
    for (int k = 4; k <= 6; ++k) b[g.slot({k, 0, 0})] = complex(nd(rng), nd(rng));
    const SpectralFunction A(g, a), B(g, b);
    const auto support = spectral_support(dealiased_product(A, B));
    CHECK(!support.empty());
    for (const auto& k : support.points()) {
        CHECK(k[0] >= 2);
        CHECK(k[0] <= 8);
    }
    CHECK(support.subset_of(SupportSet::minkowski_sum(spectral_support(A), spectral_support(B))));
}

TEST_CASE("spectral support edge cases", "[spectral]") {
    const TorusGrid g(1, 32);
    CHECK(spectral_support(SpectralFunction(g)).empty());
    std::vector<complex> c(32);
    c[g.slot({7, 0, 0})] = 2.0;
    CHECK(spectral_support(SpectralFunction(g, c)).points() == std::vector<Frequency>{{7, 0, 0}});

    const TorusGrid big(1, 256);
    const auto bank = make_bank(big);
    const auto F = apply_multiplier(bank.psi(3), forward_transform(random_function(big, 77)));
    CHECK(spectral_support(F).max_radius() <= 1.5 * 8);
}

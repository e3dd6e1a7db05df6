// Copyright 2026 The lpmorrey Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

/*! \file
 *  \brief Property checks, empirical constants, decay fits and reports.
 *
 *  Every check returns a CheckRecord. Exact checks compare a residual (lhs)
 *  against a tolerance (rhs). Constant checks run an N-independent corpus on
 *  three successive grid doublings and record the spread of the empirical
 *  constant: lhs is the largest per-grid constant, rhs the smallest, and the
 *  record passes when lhs / rhs < 2. Negative controls pass when the violation
 *  they are built to provoke is detected.
 */

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <functional>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "lpm/norms.hpp"
#include "lpm/parallel.hpp"
#include "lpm/paraproducts.hpp"
#include "lpm/testfuncs.hpp"

namespace lpm::verify {

using json = nlohmann::ordered_json;

inline constexpr const char* kReportVersion = "1.0";

/// lhs / rhs, with 0/0 = 0 and x/0 = inf for x > 0.
inline double safe_ratio(double lhs, double rhs) {
    if (rhs == 0.0) return lhs == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
    return lhs / rhs;
}

struct CheckRecord {
    std::string check_name;
    json params = json::object();
    double lhs = 0.0;
    double rhs = 0.0;
    double ratio = 0.0;
    bool pass = false;
    int n = 1;
    int N = 0;
    double runtime_ms = 0.0;
    json details = json::object();
};

/// log2(value) against j, fitted by least squares over [window_lo, window_hi].
struct DecaySeries {
    std::string check_name;
    std::vector<std::pair<int, double>> points;
    int window_lo = 3;
    int window_hi = 0;
    double slope = std::numeric_limits<double>::quiet_NaN();
    double intercept = std::numeric_limits<double>::quiet_NaN();
};

/// Least-squares slope of log2(value) vs j over the series window; also stores the intercept.
inline double fit_decay_rate(DecaySeries& series) {
    std::vector<std::pair<double, double>> xy;
    for (const auto& [j, v] : series.points) {
        if (j < series.window_lo || j > series.window_hi) continue;
        if (!(v > 0.0) || !std::isfinite(v)) {
            throw ParameterError("fit_decay_rate: value at j=" + std::to_string(j) + " is " + std::to_string(v) +
                                 "; a vanishing series has no decay rate");
        }
        xy.emplace_back(j, std::log2(v));
    }
    if (xy.size() < 4) {
        throw ParameterError("fit_decay_rate: need at least 4 points in the window [" + std::to_string(series.window_lo) +
                             ", " + std::to_string(series.window_hi) + "], got " + std::to_string(xy.size()));
    }
    double mx = 0.0, my = 0.0;
    for (const auto& [x, y] : xy) {
        mx += x;
        my += y;
    }
    mx /= static_cast<double>(xy.size());
    my /= static_cast<double>(xy.size());
    double sxx = 0.0, sxy = 0.0;
    for (const auto& [x, y] : xy) {
        sxx += (x - mx) * (x - mx);
        sxy += (x - mx) * (y - my);
    }
    series.slope = sxy / sxx;
    series.intercept = my - series.slope * mx;
    return series.slope;
}

namespace detail {

class Stopwatch {
public:
    Stopwatch() : start_(std::chrono::steady_clock::now()) {}
    [[nodiscard]] double ms() const {
        return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start_).count();
    }

private:
    std::chrono::steady_clock::time_point start_;
};

inline json finite_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

inline json norm_params_json(const NormParams& p) {
    return json{{"p", p.p}, {"q", p.q}, {"r", std::isinf(p.r) ? json("INF") : json(p.r)}, {"s", p.s}};
}

/// Record whose predicate is lhs <= rhs.
inline CheckRecord bound_record(std::string name, json params, double lhs, double rhs, const TorusGrid& grid) {
    CheckRecord r;
    r.check_name = std::move(name);
    r.params = std::move(params);
    r.lhs = lhs;
    r.rhs = rhs;
    r.ratio = safe_ratio(lhs, rhs);
    r.pass = std::isfinite(lhs) && lhs <= rhs;
    r.n = grid.dim();
    r.N = grid.points();
    return r;
}

/// Real function with iid normal coefficients on |k| <= radius, Hermitian, no -N/2 slot.
inline GridFunction random_band_limited(const TorusGrid& grid, double radius, std::uint64_t seed) {
    const int R = std::min(static_cast<int>(std::floor(radius)), grid.points() / 2 - 1);
    const auto F = lpm::detail::random_real_spectrum(
        grid, R, [radius](double r) { return r <= radius; }, seed);
    return lpm::detail::real_inverse(F);
}

/// Complex function with iid normal samples.
inline GridFunction random_samples(const TorusGrid& grid, std::uint64_t seed) {
    SplitMix64 rng(seed);
    std::vector<complex> v(grid.size());
    for (auto& x : v) {
        const double re = rng.normal();
        x = complex(re, rng.normal());
    }
    return GridFunction(grid, std::move(v));
}

inline double max_abs_diff(const GridFunction& a, const GridFunction& b) { return (a - b).sup_norm(); }

/// Grids N/4, N/2, N used by the resolution-stability checks.
inline std::vector<TorusGrid> stability_grids(const TorusGrid& grid) {
    if (grid.points() < 32) throw ParameterError("stability checks need N >= 32, got " + std::to_string(grid.points()));
    return {TorusGrid(grid.dim(), grid.points() / 4), TorusGrid(grid.dim(), grid.points() / 2), grid};
}

struct GridConstant {
    int N = 0;
    double constant = 0.0;
    json details = json::object();
};

/// lhs = max constant, rhs = min constant, ratio = drift; pass iff finite and drift < 2.
inline CheckRecord stability_record(std::string name, json params, const std::vector<GridConstant>& runs,
                                    const TorusGrid& grid) {
    CheckRecord r;
    r.check_name = std::move(name);
    r.params = std::move(params);
    r.n = grid.dim();
    r.N = grid.points();
    double hi = 0.0, lo = std::numeric_limits<double>::infinity();
    bool finite = !runs.empty();
    json per_grid = json::array();
    for (const auto& run : runs) {
        finite = finite && std::isfinite(run.constant);
        hi = std::max(hi, run.constant);
        lo = std::min(lo, run.constant);
        json item{{"N", run.N}, {"constant", finite_or_null(run.constant)}};
        for (const auto& [k, v] : run.details.items()) item[k] = v;
        per_grid.push_back(std::move(item));
    }
    if (runs.empty()) lo = 0.0;
    r.lhs = hi;
    r.rhs = lo;
    r.ratio = safe_ratio(hi, lo);
    r.pass = finite && std::isfinite(r.ratio) && r.ratio < 2.0;
    r.details["per_grid"] = std::move(per_grid);
    r.details["drift_limit"] = 2.0;
    return r;
}

inline void validate_split(const NormParams& target, const NormParams& a, const NormParams& b, const char* who) {
    target.validate();
    a.validate();
    b.validate();
    auto inv = [](double x) { return std::isinf(x) ? 0.0 : 1.0 / x; };
    const bool ok = std::abs(inv(target.p) - inv(a.p) - inv(b.p)) <= 1e-12 &&
                    std::abs(inv(target.q) - inv(a.q) - inv(b.q)) <= 1e-12;
    if (!ok) {
        throw ParameterError(std::string(who) + ": exponents must satisfy 1/p = 1/p1 + 1/p2 and 1/q = 1/q1 + 1/q2");
    }
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Exact identities
// ---------------------------------------------------------------------------

/// max over the lattice of |sum_{j<=J} phi_j - 1|; J defaults to J_max.
inline double partition_residual(const DyadicSymbolBank& bank, std::optional<int> top = std::nullopt) {
    const int J = top.value_or(bank.j_max());
    const auto& grid = bank.grid();
    double worst = 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        double acc = 0.0;
        for (int j = 0; j <= J; ++j) acc += bank.phi(j).values[i];
        worst = std::max(worst, std::abs(acc - 1.0));
    }
    return worst;
}

inline CheckRecord check_partition_of_unity(const DyadicSymbolBank& bank) {
    detail::Stopwatch sw;
    auto r = detail::bound_record("partition_of_unity", json{{"J_max", bank.j_max()}}, partition_residual(bank), 1e-12,
                                  bank.grid());
    r.runtime_ms = sw.ms();
    return r;
}

/// Negative control: the sum stopped at J_max - 2 must leave a residual near 1.
inline CheckRecord control_truncated_partition(const DyadicSymbolBank& bank) {
    detail::Stopwatch sw;
    const int top = std::max(0, bank.j_max() - 2);
    const double residual = partition_residual(bank, top);
    auto r = detail::bound_record("negative_control_truncated_partition", json{{"summed_through", top}}, residual,
                                  1e-12, bank.grid());
    r.pass = residual > 1e-12;
    r.details["expectation"] = "residual exceeds tolerance";
    r.runtime_ms = sw.ms();
    return r;
}

inline CheckRecord check_lp_reconstruction(const DyadicSymbolBank& bank, int count, std::uint64_t seed) {
    detail::Stopwatch sw;
    std::vector<double> err(static_cast<std::size_t>(count));
    parallel_for(err.size(), [&](std::size_t i) {
        const auto f = detail::random_samples(bank.grid(), derive_seed(seed, i));
        const auto back = lp_synthesize(lp_decompose(f, bank));
        err[i] = detail::max_abs_diff(back, f) / f.sup_norm();
    });
    auto r = detail::bound_record("lp_reconstruction", json{{"functions", count}, {"seed", seed}},
                                  *std::max_element(err.begin(), err.end()), 1e-10, bank.grid());
    r.runtime_ms = sw.ms();
    return r;
}

inline CheckRecord check_bony_identity(const DyadicSymbolBank& bank, int pairs, std::uint64_t seed) {
    detail::Stopwatch sw;
    std::vector<double> err(static_cast<std::size_t>(pairs));
    parallel_for(err.size(), [&](std::size_t i) {
        const auto f = detail::random_samples(bank.grid(), derive_seed(seed, 2 * i));
        const auto g = detail::random_samples(bank.grid(), derive_seed(seed, 2 * i + 1));
        const auto prod = dealiased_product(f, g);
        err[i] = detail::max_abs_diff(bony_decompose(f, g, bank).total(), prod) / prod.sup_norm();
    });
    auto r = detail::bound_record("bony_identity", json{{"pairs", pairs}, {"seed", seed}},
                                  *std::max_element(err.begin(), err.end()), 1e-10, bank.grid());
    r.runtime_ms = sw.ms();
    return r;
}

struct InclusionResult {
    std::size_t support_size = 0;
    std::size_t violations = 0;
};

inline InclusionResult support_inclusion(const GridFunction& f, const GridFunction& g, const GridFunction& product) {
    const auto S = spectral_support(forward_transform(product));
    const auto allowed = SupportSet::minkowski_sum(spectral_support(forward_transform(f)),
                                                   spectral_support(forward_transform(g)));
    return {S.size(), S.missing_from(allowed).size()};
}

/// supp F[fg] within supp Ff + supp Fg, exactly, for the dealiased product.
inline CheckRecord check_support_inclusion(const GridFunction& f, const GridFunction& g) {
    detail::Stopwatch sw;
    const auto res = support_inclusion(f, g, dealiased_product(f, g));
    auto r = detail::bound_record("support_inclusion", json{{"pairs", 1}}, static_cast<double>(res.violations), 0.0,
                                  f.grid());
    r.details["support_size"] = res.support_size;
    r.runtime_ms = sw.ms();
    return r;
}

/// Band-limited pairs at random scales; lhs counts frequencies outside the Minkowski sum.
inline CheckRecord check_support_inclusion_corpus(const TorusGrid& grid, int pairs, std::uint64_t seed) {
    detail::Stopwatch sw;
    const int top = std::max(0, grid.levels() - 3);  // keeps 2^{j+1} <= N/4 so products stay on the lattice
    std::vector<InclusionResult> res(static_cast<std::size_t>(pairs));
    parallel_for(res.size(), [&](std::size_t i) {
        SplitMix64 rng(derive_seed(seed, i));
        const int j1 = static_cast<int>(rng.next() % static_cast<std::uint64_t>(top + 1));
        const int j2 = static_cast<int>(rng.next() % static_cast<std::uint64_t>(top + 1));
        const auto f = gen_band_random(j1, rng.next(), grid);
        const auto g = gen_band_random(j2, rng.next(), grid);
        res[i] = support_inclusion(f, g, dealiased_product(f, g));
    });
    std::size_t violations = 0, total = 0;
    for (const auto& x : res) {
        violations += x.violations;
        total += x.support_size;
    }
    auto r = detail::bound_record("support_inclusion", json{{"pairs", pairs}, {"seed", seed}},
                                  static_cast<double>(violations), 0.0, grid);
    r.details["support_points_checked"] = total;
    r.runtime_ms = sw.ms();
    return r;
}

/// Negative control: the sample-wise product of two tones just below Nyquist wraps outside the Minkowski sum.
inline CheckRecord control_aliased_product(const TorusGrid& grid, std::uint64_t seed) {
    detail::Stopwatch sw;
    const int k0 = grid.points() / 2 - 2;
    SplitMix64 rng(seed);
    const double t1 = rng.phase(), t2 = rng.phase();
    auto tone = [&](double theta) {
        return GridFunction::sample(grid, [&](const std::array<double, 3>& x) { return std::polar(1.0, k0 * x[0] + theta); });
    };
    const auto f = tone(t1);
    const auto g = tone(t2);
    const auto aliased = support_inclusion(f, g, aliased_product(f, g));
    const auto product = dealiased_product(f, g);
    auto clean = support_inclusion(f, g, product);
    // the exact product is zero here; its relative support is roundoff
    if (product.sup_norm() <= 1e-12) clean.violations = 0;
    auto r = detail::bound_record("negative_control_aliased_product", json{{"frequency", k0}, {"seed", seed}},
                                  static_cast<double>(aliased.violations), 0.0, grid);
    r.pass = aliased.violations > 0 && clean.violations == 0;
    r.details["aliased_violations"] = aliased.violations;
    r.details["dealiased_violations"] = clean.violations;
    r.details["expectation"] = "aliased product violates inclusion";
    r.runtime_ms = sw.ms();
    return r;
}

/// Every (j, k, l) predicted to vanish gives sup |phi_j(D)[phi_k psi_{l-2} f * phi_l g]| <= 1e-12 * input scale.
inline CheckRecord check_example_support_arithmetic(const DyadicSymbolBank& bank, int samples, std::uint64_t seed) {
    detail::Stopwatch sw;
    const auto& grid = bank.grid();
    const int top = bank.j_max() - 2;
    if (top < 2) throw ParameterError("support arithmetic check needs J_max >= 4 on " + grid.describe());
    struct Tally {
        double worst = 0.0;
        std::size_t vanishing = 0;
        std::size_t nonzero = 0;
    };
    std::vector<Tally> tallies(static_cast<std::size_t>(samples));
    parallel_for(tallies.size(), [&](std::size_t s) {
        const auto F = forward_transform(detail::random_band_limited(grid, grid.points() / 2.0, derive_seed(seed, 2 * s)));
        const auto G = forward_transform(detail::random_band_limited(grid, grid.points() / 2.0, derive_seed(seed, 2 * s + 1)));
        auto& t = tallies[s];
        for (int l = 2; l <= top; ++l) {
            const auto high = apply_multiplier(bank.phi(l), G);
            const double high_sup = inverse_transform(high).sup_norm();
            for (int k = 0; k <= top; ++k) {
                const auto low = apply_multiplier(bank.psi(l - 2), apply_multiplier(bank.phi(k), F));
                const double scale = inverse_transform(low).sup_norm() * high_sup;
                if (scale == 0.0) continue;
                const auto prod = dealiased_product(low, high);
                for (int j = 0; j <= top; ++j) {
                    const auto pred = predict_product_support(j, k, l);
                    if (!pred.must_vanish) {
                        ++t.nonzero;
                        continue;
                    }
                    ++t.vanishing;
                    const double v = inverse_transform(apply_multiplier(bank.phi(j), prod)).sup_norm() / scale;
                    t.worst = std::max(t.worst, v);
                }
            }
        }
    });
    Tally total;
    for (const auto& t : tallies) {
        total.worst = std::max(total.worst, t.worst);
        total.vanishing += t.vanishing;
        total.nonzero += t.nonzero;
    }
    auto r = detail::bound_record("example_support_arithmetic", json{{"samples", samples}, {"max_scale", top}, {"seed", seed}},
                                  total.worst, 1e-12, grid);
    r.details["must_vanish_triples"] = total.vanishing;
    r.details["possibly_nonzero_triples"] = total.nonzero;
    r.runtime_ms = sw.ms();
    return r;
}

struct HolderSplit {
    double p, q, p1, q1, p2, q2;
};

inline std::vector<HolderSplit> default_holder_splits() {
    return {{2, 1, 4, 2, 4, 2}, {2, 1, 3, 2, 6, 2}, {4, 2, 8, 4, 8, 4}};
}

/// Corpus item i for the Hoelder check: band-limited, sampled-noise and singular functions.
inline GridFunction holder_corpus_item(const TorusGrid& grid, std::size_t i, std::uint64_t seed) {
    const auto s = derive_seed(seed, i);
    switch (i % 3) {
        case 0: return detail::random_band_limited(grid, std::ldexp(1.0, 1 + static_cast<int>(i % 5)), s);
        case 1: return detail::random_samples(grid, s);
        default: {
            const auto w = gen_morrey_exemplar(2.0 + static_cast<double>(i % 4), grid);
            SplitMix64 rng(s);
            return w + complex(rng.normal(), 0.0) * detail::random_samples(grid, rng.next());
        }
    }
}

/// ||fg||_{M^p_q} <= ||f||_{M^p1_q1} ||g||_{M^p2_q2} with constant 1, sample-wise product.
inline CheckRecord check_morrey_holder(const TorusGrid& grid, int pairs, const std::vector<HolderSplit>& splits,
                                       std::uint64_t seed) {
    detail::Stopwatch sw;
    for (const auto& s : splits) {
        detail::validate_split({s.p, s.q, 1, 0}, {s.p1, s.q1, 1, 0}, {s.p2, s.q2, 1, 0}, "morrey_holder");
    }
    const CubeFamily family(grid);
    std::vector<double> worst(static_cast<std::size_t>(pairs));
    parallel_for(worst.size(), [&](std::size_t i) {
        const auto f = holder_corpus_item(grid, 2 * i, seed);
        const auto g = holder_corpus_item(grid, 2 * i + 1, seed);
        const auto fg = GridFunction::pointwise(f, g);
        double w = 0.0;
        for (const auto& s : splits) {
            const double lhs = morrey_norm(fg, s.p, s.q, family);
            const double rhs = morrey_norm(f, s.p1, s.q1, family) * morrey_norm(g, s.p2, s.q2, family);
            w = std::max(w, safe_ratio(lhs, rhs));
        }
        worst[i] = w;
    });
    json sp = json::array();
    for (const auto& s : splits) sp.push_back(json{{"p", s.p}, {"q", s.q}, {"p1", s.p1}, {"q1", s.q1}, {"p2", s.p2}, {"q2", s.q2}});
    auto r = detail::bound_record("morrey_holder", json{{"pairs", pairs}, {"splittings", sp}, {"seed", seed}},
                                  *std::max_element(worst.begin(), worst.end()), 1.0 + 1e-12, grid);
    r.runtime_ms = sw.ms();
    return r;
}

/// Discrete L^1 norm of the kernel of psi_j(D): sum_x |K(x)| h^n with K = (2 pi)^{-n} sum_k psi_j(k) e^{ikx}.
inline double psi_kernel_l1(const DyadicSymbolBank& bank, int j) {
    const auto& grid = bank.grid();
    const auto& sym = bank.psi(j).values;
    std::vector<complex> c(sym.begin(), sym.end());
    const auto K = inverse_transform(SpectralFunction(grid, std::move(c)));
    const double scale = std::pow(kTwoPi, -0.5 * grid.dim());
    double acc = 0.0;
    for (const auto& v : K.values()) acc += std::abs(v) * scale;
    return acc * grid.cell_measure();
}

/// Reference grid for C_psi: fine enough that psi_{J_max-2} has its whole transition on the lattice.
inline TorusGrid psi_reference_grid(int dim) {
    switch (dim) {
        case 1: return TorusGrid(1, 4096);
        case 2: return TorusGrid(2, 256);
        default: return TorusGrid(3, 64);
    }
}

inline double psi_multiplier_constant(int dim) {
    const DyadicSymbolBank ref(psi_reference_grid(dim));
    return psi_kernel_l1(ref, ref.j_max() - 2);
}

/// max_{f, j} ||psi_j(D) f||_{M^p_q} / ||f||_{M^p_q} <= 1.05 C_psi.
inline CheckRecord check_psi_multiplier(const DyadicSymbolBank& bank, const NormParams& params, int count,
                                        std::uint64_t seed) {
    detail::Stopwatch sw;
    params.validate();
    const auto& grid = bank.grid();
    const double c_psi = psi_multiplier_constant(grid.dim());
    const CubeFamily family(grid);
    std::vector<double> worst(static_cast<std::size_t>(count));
    parallel_for(worst.size(), [&](std::size_t i) {
        const auto f = holder_corpus_item(grid, i, seed);
        const auto F = forward_transform(f);
        const double base = morrey_norm(f, params.p, params.q, family);
        double w = 0.0;
        for (int j = 0; j <= bank.j_max(); ++j) {
            const auto fj = inverse_transform(apply_multiplier(bank.psi(j), F));
            w = std::max(w, morrey_norm(fj, params.p, params.q, family) / base);
        }
        worst[i] = w;
    });
    const double lhs = *std::max_element(worst.begin(), worst.end());
    auto r = detail::bound_record("psi_multiplier", json{{"norm", detail::norm_params_json(params)}, {"functions", count}, {"seed", seed}},
                                  lhs, 1.05 * c_psi, grid);
    r.details["C_psi"] = c_psi;
    r.details["max_ratio"] = lhs;
    r.runtime_ms = sw.ms();
    return r;
}

/// ||f_N||_{L^2} increases strictly with N while ||f_N||_{M^2_1} stays within a factor 1.2.
inline CheckRecord check_morrey_lebesgue_separation(const std::vector<int>& sizes, double p, double q) {
    detail::Stopwatch sw;
    validate_morrey_exponents(p, q);
    if (!(q < p)) throw ParameterError("separation check needs q < p");
    std::vector<double> lebesgue, morrey;
    json per = json::array();
    for (int N : sizes) {
        const TorusGrid g(1, N);
        const auto f = gen_morrey_exemplar(p, g);
        lebesgue.push_back(lebesgue_norm(f, p));
        morrey.push_back(morrey_norm(f, p, q));
        per.push_back(json{{"N", N}, {"lebesgue", lebesgue.back()}, {"morrey", morrey.back()}});
    }
    bool increasing = true;
    for (std::size_t i = 1; i < lebesgue.size(); ++i) increasing = increasing && lebesgue[i] > lebesgue[i - 1];
    const auto [lo, hi] = std::minmax_element(morrey.begin(), morrey.end());
    CheckRecord r = detail::bound_record("morrey_lebesgue_separation", json{{"p", p}, {"q", q}, {"sizes", sizes}},
                                         *hi / *lo, 1.2, TorusGrid(1, sizes.back()));
    r.pass = r.pass && increasing;
    r.details["lebesgue_strictly_increasing"] = increasing;
    r.details["per_grid"] = std::move(per);
    r.runtime_ms = sw.ms();
    return r;
}

/// holder_zygmund_norm(W_alpha, alpha) = 1 within 1e-10 for each alpha.
inline CheckRecord check_holder_zygmund_closed_form(const DyadicSymbolBank& bank, const std::vector<double>& alphas,
                                                    int depth) {
    detail::Stopwatch sw;
    double worst = 0.0;
    json per = json::array();
    for (double a : alphas) {
        const double v = holder_zygmund_norm(gen_weierstrass(a, depth, bank.grid()), a, bank);
        worst = std::max(worst, std::abs(v - 1.0));
        per.push_back(json{{"alpha", a}, {"value", v}});
    }
    auto r = detail::bound_record("holder_zygmund_closed_form", json{{"alphas", alphas}, {"depth", depth}}, worst, 1e-10,
                                  bank.grid());
    r.details["per_alpha"] = std::move(per);
    r.runtime_ms = sw.ms();
    return r;
}

/// lipschitz_norm(W_1 at depth J) >= J/2 while its C^1 norm stays 1.
inline CheckRecord check_lipschitz_witness(const DyadicSymbolBank& bank, const std::vector<int>& depths) {
    detail::Stopwatch sw;
    double worst_margin = std::numeric_limits<double>::infinity();
    double worst_c1 = 0.0;
    bool exact = true;
    json per = json::array();
    for (int J : depths) {
        const auto w = gen_weierstrass(1.0, J, bank.grid());
        const auto lip = lipschitz_profile(w, 1.0);
        const double c1 = holder_zygmund_norm(w, 1.0, bank);
        exact = exact && lip.exact;
        worst_margin = std::min(worst_margin, lip.value / (0.5 * J));
        worst_c1 = std::max(worst_c1, std::abs(c1 - 1.0));
        per.push_back(json{{"depth", J}, {"lipschitz", lip.value}, {"c1", c1}, {"exact", lip.exact}});
    }
    CheckRecord r;
    r.check_name = "lipschitz_witness";
    r.params = json{{"depths", depths}};
    r.lhs = 0.5;  // required growth per depth
    r.rhs = 0.5 * worst_margin;  // smallest observed lipschitz / J
    r.ratio = safe_ratio(r.lhs, r.rhs);
    r.pass = worst_margin >= 1.0 && worst_c1 <= 1e-10;
    r.n = bank.grid().dim();
    r.N = bank.grid().points();
    r.details["per_depth"] = std::move(per);
    r.details["max_c1_deviation"] = worst_c1;
    r.details["exact_pair_sup"] = exact;
    r.runtime_ms = sw.ms();
    return r;
}

// ---------------------------------------------------------------------------
// Empirical constants
// ---------------------------------------------------------------------------

/// Largest depth whose corpus fits every grid in the list.
inline int corpus_depth(const std::vector<TorusGrid>& grids, int margin) {
    int depth = std::numeric_limits<int>::max();
    for (const auto& g : grids) depth = std::min(depth, g.levels() - margin);
    if (depth < 2) throw ParameterError("grids too coarse for the verification corpus");
    return depth;
}

struct SynthesisSpec {
    CollectionMode mode = CollectionMode::annulus;
    double s = 0.5;
    NormParams params{2, 1, 2, 0.5};
    NormParams left{4, 2, 4, 0.25};   ///< first factor exponents (product modes)
    NormParams right{4, 2, 4, 0.25};  ///< second factor exponents (product modes)
    int depth = 0;                     ///< 0: largest depth fitting every grid
    int seeds = 5;
    std::uint64_t seed = 1;
};

inline std::string synthesis_label(CollectionMode mode) {
    switch (mode) {
        case CollectionMode::annulus: return "annulus";
        case CollectionMode::ball: return "ball";
        case CollectionMode::low_ball:
        case CollectionMode::high_annulus: return "paraproduct";
        case CollectionMode::resonant_ball: return "resonant";
    }
    return "?";
}

inline void validate_synthesis(const SynthesisSpec& spec) {
    spec.params.validate();
    switch (spec.mode) {
        case CollectionMode::ball:
            if (!(spec.s > 0.0)) throw HypothesisError("ball synthesis requires s > 0, got s = " + std::to_string(spec.s));
            break;
        case CollectionMode::resonant_ball:
            if (!(spec.left.s + spec.right.s > 0.0)) {
                throw HypothesisError("resonant product synthesis requires s1 + s2 > 0");
            }
            [[fallthrough]];
        case CollectionMode::low_ball:
        case CollectionMode::high_annulus: {
            detail::validate_split(spec.params, spec.left, spec.right, "product synthesis");
            auto inv = [](double x) { return std::isinf(x) ? 0.0 : 1.0 / x; };
            if (std::abs(inv(spec.params.r) - inv(spec.left.r) - inv(spec.right.r)) > 1e-12) {
                throw ParameterError("product synthesis: exponents must satisfy 1/r = 1/r1 + 1/r2");
            }
            break;
        }
        case CollectionMode::annulus: break;
    }
}

namespace detail {

inline double collection_weight_norm(const AnnulusCollection& c, const NormParams& np, const CubeFamily& family) {
    std::vector<double> terms;
    for (std::size_t i = 0; i < c.pieces.size(); ++i) {
        terms.push_back(std::exp2(c.index(i) * np.s) * morrey_norm(c.pieces[i], np.p, np.q, family));
    }
    return lr_norm(terms, np.r);
}

/// Empirical constant of one synthesis collection (or collection pair) on one grid.
inline double synthesis_ratio(const SynthesisSpec& spec, const TorusGrid& grid, const DyadicSymbolBank& bank, int depth,
                              std::uint64_t seed) {
    const CubeFamily family(grid);
    NormParams target = spec.params;
    if (spec.mode == CollectionMode::annulus || spec.mode == CollectionMode::ball) {
        target.s = spec.s;
        const auto c = gen_annulus_collection(spec.s, target.p, target.q, depth, seed, grid, spec.mode);
        const auto sum = lp_synthesize(c.pieces);
        return safe_ratio(besov_morrey_norm(sum, target, bank), collection_weight_norm(c, target, family));
    }
    const bool resonant_mode = spec.mode == CollectionMode::resonant_ball;
    const auto first_mode = resonant_mode ? CollectionMode::resonant_ball : CollectionMode::low_ball;
    const auto second_mode = resonant_mode ? CollectionMode::resonant_ball : CollectionMode::high_annulus;
    const auto f = gen_annulus_collection(spec.left.s, spec.left.p, spec.left.q, depth, derive_seed(seed, 1), grid, first_mode);
    const auto g = gen_annulus_collection(spec.right.s, spec.right.p, spec.right.q, depth, derive_seed(seed, 2), grid, second_mode);
    SpectralFunction acc(grid);
    for (std::size_t i = 0; i < f.pieces.size(); ++i) {
        acc += dealiased_product(forward_transform(f.pieces[i]), forward_transform(g.pieces[i]));
    }
    target.s = spec.left.s + spec.right.s;
    const double lhs = besov_morrey_norm(inverse_transform(acc), target, bank);
    return safe_ratio(lhs, collection_weight_norm(f, spec.left, family) * collection_weight_norm(g, spec.right, family));
}

}  // namespace detail

/// Empirical synthesis constant per grid, and its drift across three grid doublings.
inline CheckRecord check_synthesis_lemmas(const SynthesisSpec& spec, const TorusGrid& grid) {
    detail::Stopwatch sw;
    validate_synthesis(spec);
    const auto grids = detail::stability_grids(grid);
    const bool product = spec.mode != CollectionMode::annulus && spec.mode != CollectionMode::ball;
    // annulus pieces reach 2^{J+3}; product pieces reach 2^{J+2} + 2^{J+1}
    const int depth = spec.depth > 0 ? spec.depth : corpus_depth(grids, product ? 4 : 4);
    std::vector<detail::GridConstant> runs;
    for (const auto& g : grids) {
        const DyadicSymbolBank bank(g);
        std::vector<double> ratios(static_cast<std::size_t>(spec.seeds));
        parallel_for(ratios.size(), [&](std::size_t i) {
            ratios[i] = detail::synthesis_ratio(spec, g, bank, depth, derive_seed(spec.seed, i));
        });
        runs.push_back({g.points(), *std::max_element(ratios.begin(), ratios.end()), json::object()});
    }
    json params{{"mode", synthesis_label(spec.mode)}, {"depth", depth}, {"seeds", spec.seeds}, {"seed", spec.seed}};
    if (product) {
        params["norm"] = detail::norm_params_json({spec.params.p, spec.params.q, spec.params.r, spec.left.s + spec.right.s});
        params["left"] = detail::norm_params_json(spec.left);
        params["right"] = detail::norm_params_json(spec.right);
    } else {
        params["norm"] = detail::norm_params_json({spec.params.p, spec.params.q, spec.params.r, spec.s});
    }
    auto r = detail::stability_record("synthesis_" + synthesis_label(spec.mode), std::move(params), runs, grid);
    r.runtime_ms = sw.ms();
    return r;
}

struct ProductSpec {
    NormParams params{2, 1, 2, 1.0};  ///< target (p, q, r, s)
    NormParams left{4, 2, 2, 1.0};    ///< (p1, q1, r, s)
    NormParams right{4, 2, 2, 1.0};   ///< (p2, q2, r, s)
    int pairs = 50;
    int depth = 0;
    std::uint64_t seed = 1;
};

namespace detail {

/// N-independent corpus function for the product estimate: decaying band sums or lacunary tones.
inline GridFunction product_corpus_item(const TorusGrid& grid, int depth, double s, std::uint64_t seed) {
    SplitMix64 rng(seed);
    if (rng.next() % 4 == 0) {
        return gen_lacunary(s, 2.0, 1.0, depth, rng.next(), grid).real_part();
    }
    const double decay = s - 0.5 + 2.0 * rng.uniform();
    GridFunction acc(grid);
    for (int j = 0; j <= depth; ++j) {
        const double amp = std::exp2(-j * decay) * (0.25 + rng.uniform());
        acc = acc + complex(amp) * gen_band_random(j, rng.next(), grid);
    }
    return acc;
}

}  // namespace detail

/// ||fg||_{N^s_pqr} <= C ||f||_{N^s_p1q1r} ||g||_{N^s_p2q2r}; per-piece Bony ratios reported.
inline CheckRecord estimate_theorem1_constant(const ProductSpec& spec, const TorusGrid& grid) {
    detail::Stopwatch sw;
    if (!(spec.params.s > 0.0)) {
        throw HypothesisError("product estimate requires s > 0, got s = " + std::to_string(spec.params.s));
    }
    detail::validate_split(spec.params, spec.left, spec.right, "product estimate");
    const auto grids = detail::stability_grids(grid);
    // factors reach 2^{depth+1}; their product must stay inside N/2 on the coarsest grid
    const int depth = spec.depth > 0 ? spec.depth : std::min(5, corpus_depth(grids, 3));
    NormParams left = spec.left, right = spec.right;
    left.s = right.s = spec.params.s;
    left.r = right.r = spec.params.r;

    std::vector<detail::GridConstant> runs;
    for (const auto& g : grids) {
        const DyadicSymbolBank bank(g);
        struct Item {
            double total = 0, low_high = 0, high_low = 0, resonant = 0;
        };
        std::vector<Item> items(static_cast<std::size_t>(spec.pairs));
        parallel_for(items.size(), [&](std::size_t i) {
            const auto f = detail::product_corpus_item(g, depth, spec.params.s, derive_seed(spec.seed, 2 * i));
            const auto h = detail::product_corpus_item(g, depth, spec.params.s, derive_seed(spec.seed, 2 * i + 1));
            const double rhs = besov_morrey_norm(f, left, bank) * besov_morrey_norm(h, right, bank);
            const auto split = bony_decompose(f, h, bank);
            auto& it = items[i];
            it.total = safe_ratio(besov_morrey_norm(split.total(), spec.params, bank), rhs);
            it.low_high = safe_ratio(besov_morrey_norm(split.low_high, spec.params, bank), rhs);
            it.high_low = safe_ratio(besov_morrey_norm(split.high_low, spec.params, bank), rhs);
            it.resonant = safe_ratio(besov_morrey_norm(split.resonant, spec.params, bank), rhs);
        });
        Item worst;
        for (const auto& it : items) {
            worst.total = std::max(worst.total, it.total);
            worst.low_high = std::max(worst.low_high, it.low_high);
            worst.high_low = std::max(worst.high_low, it.high_low);
            worst.resonant = std::max(worst.resonant, it.resonant);
        }
        runs.push_back({g.points(), worst.total,
                        json{{"low_high", worst.low_high}, {"high_low", worst.high_low}, {"resonant", worst.resonant}}});
    }
    json params{{"norm", detail::norm_params_json(spec.params)},
                {"left", detail::norm_params_json(left)},
                {"right", detail::norm_params_json(right)},
                {"pairs", spec.pairs},
                {"depth", depth},
                {"seed", spec.seed}};
    auto r = detail::stability_record("product_estimate_constant", std::move(params), runs, grid);
    r.runtime_ms = sw.ms();
    return r;
}

struct CommutatorSpec {
    double alpha = 0.8;
    double beta = -0.5;
    double s = -0.2;
    NormParams params{2, 1, 2, -0.2};  ///< (p, q, r); s is taken from the field above
    int triples = 30;
    int depth = 0;
    std::uint64_t seed = 1;
};

inline void validate_commutator(const CommutatorSpec& spec) {
    if (!(spec.alpha > 0.0 && spec.alpha <= 1.0)) {
        throw HypothesisError("commutator estimate requires 0 < alpha <= 1, got " + std::to_string(spec.alpha));
    }
    if (!(spec.s + spec.beta < 0.0 && 0.0 < spec.s + spec.alpha + spec.beta)) {
        throw HypothesisError("commutator estimate requires s + beta < 0 < s + alpha + beta (got s + beta = " +
                              std::to_string(spec.s + spec.beta) + ", s + alpha + beta = " +
                              std::to_string(spec.s + spec.alpha + spec.beta) + ")");
    }
    NormParams p = spec.params;
    p.s = spec.s;
    p.validate();
}

namespace detail {

struct CommutatorTriple {
    GridFunction f, g, h;
};

/// f: phased W_alpha; g: tones 2^{-j beta} cos(2^j x + t_j); h: band sums with weights 2^{-js}.
inline CommutatorTriple commutator_corpus_item(const TorusGrid& grid, const CommutatorSpec& spec, int depth,
                                               std::uint64_t seed) {
    SplitMix64 rng(seed);
    auto f = gen_weierstrass_phased(spec.alpha, depth, rng.next(), grid);
    std::vector<double> phase(static_cast<std::size_t>(depth) + 1);
    for (auto& t : phase) t = rng.phase();
    auto g = GridFunction::sample(grid, [&](const std::array<double, 3>& x) {
        double acc = 0.0;
        for (int j = 1; j <= depth; ++j) {
            acc += std::exp2(-j * spec.beta) * std::cos(std::ldexp(1.0, j) * x[0] + phase[static_cast<std::size_t>(j)]);
        }
        return acc;
    });
    GridFunction h(grid);
    for (int j = 0; j <= depth; ++j) {
        const double amp = std::exp2(-j * spec.s) * (0.25 + rng.uniform());
        h = h + complex(amp) * gen_band_random(j, rng.next(), grid);
    }
    return {std::move(f), std::move(g), std::move(h)};
}

}  // namespace detail

/// ||(f <= g) (.) h - f (g (.) h)||_{N^{s+alpha+beta}} <= C ||f||_{Lip^alpha} ||g||_{C^beta} ||h||_{N^s}.
inline CheckRecord estimate_theorem2_constant(const CommutatorSpec& spec, const TorusGrid& grid) {
    detail::Stopwatch sw;
    validate_commutator(spec);
    const auto grids = detail::stability_grids(grid);
    // (f <= g) (.) h reaches 2^{depth+3} before truncation
    const int depth = spec.depth > 0 ? spec.depth : std::min(5, corpus_depth(grids, 4));
    NormParams h_params = spec.params, out_params = spec.params;
    h_params.s = spec.s;
    out_params.s = spec.s + spec.alpha + spec.beta;
    std::vector<detail::GridConstant> runs;
    for (const auto& g : grids) {
        const DyadicSymbolBank bank(g);
        std::vector<double> ratios(static_cast<std::size_t>(spec.triples));
        parallel_for(ratios.size(), [&](std::size_t i) {
            const auto t = detail::commutator_corpus_item(g, spec, depth, derive_seed(spec.seed, i));
            const double lhs = besov_morrey_norm(commutator_thm2(t.f, t.g, t.h, bank), out_params, bank);
            const double rhs = lipschitz_norm(t.f, spec.alpha) * holder_zygmund_norm(t.g, spec.beta, bank) *
                               besov_morrey_norm(t.h, h_params, bank);
            ratios[i] = safe_ratio(lhs, rhs);
        });
        runs.push_back({g.points(), *std::max_element(ratios.begin(), ratios.end()),
                        json{{"exact_lipschitz", g.dim() == 1}}});
    }
    json params{{"alpha", spec.alpha}, {"beta", spec.beta}, {"s", spec.s},
                {"norm", detail::norm_params_json(out_params)}, {"triples", spec.triples},
                {"depth", depth}, {"seed", spec.seed}};
    auto r = detail::stability_record("commutator_estimate_constant", std::move(params), runs, grid);
    r.runtime_ms = sw.ms();
    return r;
}

struct EmbeddingSpec {
    double s = 1.5;
    double p = 2.0;
    double q = 1.0;
    int count = 20;
    int depth = 0;
    std::uint64_t seed = 1;
};

/// max_f ||f||_{C^{s-n/p}} / ||f||_{N^s_{pq inf}} per grid, and its drift.
inline CheckRecord check_embedding(const EmbeddingSpec& spec, const TorusGrid& grid) {
    detail::Stopwatch sw;
    const int n = grid.dim();
    if (!(spec.s > n / spec.p)) {
        throw HypothesisError("embedding into C^{s-n/p} requires s > n/p (got s = " + std::to_string(spec.s) +
                              ", n/p = " + std::to_string(n / spec.p) + ")");
    }
    validate_morrey_exponents(spec.p, spec.q);
    const auto grids = detail::stability_grids(grid);
    const int depth = spec.depth > 0 ? spec.depth : std::min(6, corpus_depth(grids, 3));
    const NormParams np{spec.p, spec.q, kInfinity, spec.s};
    const double beta = spec.s - n / spec.p;
    std::vector<detail::GridConstant> runs;
    for (const auto& g : grids) {
        const DyadicSymbolBank bank(g);
        std::vector<double> ratios(static_cast<std::size_t>(spec.count));
        parallel_for(ratios.size(), [&](std::size_t i) {
            GridFunction f(g);
            if (i == 0) {
                f = GridFunction::sample(g, [](const std::array<double, 3>&) { return 1.0; });
            } else if (i % 3 == 1) {
                f = gen_lacunary(spec.s, spec.p, spec.q, depth, derive_seed(spec.seed, i), g).real_part();
            } else {
                f = detail::product_corpus_item(g, depth, spec.s, derive_seed(spec.seed, i));
            }
            ratios[i] = safe_ratio(holder_zygmund_norm(f, beta, bank), besov_morrey_norm(f, np, bank));
        });
        runs.push_back({g.points(), *std::max_element(ratios.begin(), ratios.end()),
                        json{{"constant_function_ratio", ratios[0]}}});
    }
    json params{{"s", spec.s}, {"p", spec.p}, {"q", spec.q}, {"target_smoothness", beta},
                {"functions", spec.count}, {"depth", depth}, {"seed", spec.seed}};
    auto r = detail::stability_record("embedding_constant", std::move(params), runs, grid);
    r.runtime_ms = sw.ms();
    return r;
}

/// Negative control: a call with parameters outside the hypothesis must be rejected.
inline CheckRecord control_guard(std::string name, json params, const TorusGrid& grid, const std::function<void()>& call) {
    detail::Stopwatch sw;
    CheckRecord r;
    r.check_name = std::move(name);
    r.params = std::move(params);
    r.n = grid.dim();
    r.N = grid.points();
    try {
        call();
        r.pass = false;
        r.details["message"] = "accepted";
    } catch (const HypothesisError& e) {
        r.pass = true;
        r.details["message"] = e.what();
    }
    r.lhs = r.pass ? 1.0 : 0.0;
    r.rhs = 1.0;
    r.ratio = r.lhs;
    r.details["expectation"] = "rejected by hypothesis guard";
    r.runtime_ms = sw.ms();
    return r;
}

// ---------------------------------------------------------------------------
// Commutator decay
// ---------------------------------------------------------------------------

enum class CommutatorKind { block, para };

inline std::string to_string(CommutatorKind k) { return k == CommutatorKind::block ? "block" : "para"; }

/// sup |C_j(F, G_j)| with F = W_alpha at depth J_max - 1 and probe G_j = e^{i 2^j x}.
/// Both are capped at top, the largest j with 2^j < N/2, and the fit window at top - 1 so that F has
/// blocks above every fitted scale. In 1-D this drops only j = J_max and leaves the window [3, J_max - 2].
inline DecaySeries commutator_decay_series(const DyadicSymbolBank& bank, double alpha, CommutatorKind kind) {
    const auto& grid = bank.grid();
    const int J = bank.j_max();
    const int top = std::min(J, grid.levels() - 2);
    DecaySeries series;
    std::ostringstream name;
    name << "decay_" << to_string(kind) << "_commutator_alpha_" << alpha;
    series.check_name = name.str();
    series.window_lo = 3;
    series.window_hi = std::min(J - 2, top - 1);
    const auto F = forward_transform(gen_weierstrass(alpha, std::min(J - 1, top), grid));
    std::vector<double> values(static_cast<std::size_t>(top) + 1);
    parallel_for(values.size(), [&](std::size_t jj) {
        const int j = static_cast<int>(jj);
        const auto G = forward_transform(GridFunction::sample(grid, [j](const std::array<double, 3>& x) {
            return std::polar(1.0, std::ldexp(1.0, j) * x[0]);
        }));
        const auto c = kind == CommutatorKind::block ? block_commutator(F, G, j, bank) : para_commutator(F, G, j, bank);
        values[jj] = inverse_transform(c).sup_norm();
    });
    for (int j = 0; j <= top; ++j) series.points.emplace_back(j, values[static_cast<std::size_t>(j)]);
    return series;
}

/// Fitted slope within 0.15 max(1, 1/alpha) alpha of -alpha.
inline CheckRecord check_commutator_decay(const DyadicSymbolBank& bank, double alpha, CommutatorKind kind,
                                          DecaySeries* out = nullptr) {
    detail::Stopwatch sw;
    if (!(alpha > 0.0 && alpha <= 1.0)) throw ParameterError("decay check needs 0 < alpha <= 1");
    auto series = commutator_decay_series(bank, alpha, kind);
    const double tolerance = 0.15 * std::max(1.0, 1.0 / alpha) * alpha;
    CheckRecord r;
    r.check_name = series.check_name;
    r.params = json{{"alpha", alpha}, {"operator", to_string(kind)}, {"window", {series.window_lo, series.window_hi}}};
    r.n = bank.grid().dim();
    r.N = bank.grid().points();
    try {
        const double slope = fit_decay_rate(series);
        r.lhs = std::abs(slope + alpha);
        r.rhs = tolerance;
        r.ratio = safe_ratio(r.lhs, r.rhs);
        r.pass = r.lhs <= tolerance;
        r.details["slope"] = slope;
        r.details["intercept"] = series.intercept;
    } catch (const ParameterError& e) {
        r.lhs = std::numeric_limits<double>::infinity();
        r.rhs = tolerance;
        r.ratio = r.lhs;
        r.pass = false;
        r.details["error"] = e.what();
    }
    r.details["expected_slope"] = -alpha;
    json pts = json::array();
    for (const auto& [j, v] : series.points) pts.push_back(json{{"j", j}, {"value", v}});
    r.details["series"] = std::move(pts);
    if (out) *out = std::move(series);
    r.runtime_ms = sw.ms();
    return r;
}

// ---------------------------------------------------------------------------
// Reports and suites
// ---------------------------------------------------------------------------

inline json to_json(const CheckRecord& r) {
    return json{{"check_name", r.check_name},
                {"params", r.params},
                {"lhs", detail::finite_or_null(r.lhs)},
                {"rhs", detail::finite_or_null(r.rhs)},
                {"ratio", detail::finite_or_null(r.ratio)},
                {"pass", r.pass},
                {"grid", json{{"n", r.n}, {"N", r.N}}},
                {"runtime_ms", r.runtime_ms},
                {"details", r.details}};
}

inline json make_report(const std::vector<CheckRecord>& records, int n, int N) {
    json checks = json::array();
    for (const auto& r : records) checks.push_back(to_json(r));
    return json{{"version", kReportVersion}, {"grid", json{{"n", n}, {"N", N}}}, {"checks", std::move(checks)}};
}

/// Structural schema validation; returns one message per violation.
inline std::vector<std::string> report_schema_errors(const json& report) {
    std::vector<std::string> errors;
    auto need = [&](const json& obj, const char* key, auto pred, const std::string& where) {
        if (!obj.is_object() || !obj.contains(key) || !pred(obj.at(key))) errors.push_back(where + "." + key + " missing or mistyped");
    };
    auto is_string = [](const json& v) { return v.is_string(); };
    auto is_object = [](const json& v) { return v.is_object(); };
    auto is_bool = [](const json& v) { return v.is_boolean(); };
    auto is_count = [](const json& v) { return v.is_number_integer() && v.get<long long>() >= 1; };
    auto is_number = [](const json& v) { return v.is_number(); };
    auto number_or_null = [](const json& v) { return v.is_number() || v.is_null(); };
    if (!report.is_object()) return {"report is not an object"};
    need(report, "version", is_string, "report");
    need(report, "grid", is_object, "report");
    if (report.contains("grid")) {
        need(report["grid"], "n", is_count, "report.grid");
        need(report["grid"], "N", is_count, "report.grid");
    }
    if (!report.contains("checks") || !report["checks"].is_array()) {
        errors.emplace_back("report.checks missing or not an array");
        return errors;
    }
    for (std::size_t i = 0; i < report["checks"].size(); ++i) {
        const auto& c = report["checks"][i];
        const std::string where = "checks[" + std::to_string(i) + "]";
        need(c, "check_name", is_string, where);
        need(c, "params", is_object, where);
        need(c, "lhs", number_or_null, where);
        need(c, "rhs", number_or_null, where);
        need(c, "ratio", number_or_null, where);
        need(c, "pass", is_bool, where);
        need(c, "grid", is_object, where);
        need(c, "runtime_ms", is_number, where);
        need(c, "details", is_object, where);
        if (c.is_object() && c.contains("grid")) {
            need(c["grid"], "n", is_count, where + ".grid");
            need(c["grid"], "N", is_count, where + ".grid");
        }
    }
    return errors;
}

inline std::string decay_csv(const std::vector<DecaySeries>& series) {
    std::ostringstream out;
    out.precision(17);
    out << "check_name,j,value,log2_value\n";
    for (const auto& s : series) {
        for (const auto& [j, v] : s.points) {
            out << s.check_name << ',' << j << ',' << v << ',';
            if (v > 0.0) out << std::log2(v);
            out << '\n';
        }
    }
    return out.str();
}

inline bool all_pass(const std::vector<CheckRecord>& records) {
    return std::all_of(records.begin(), records.end(), [](const CheckRecord& r) { return r.pass; });
}

/// Writes the JSON report and, if any series were fitted, the decay CSV. Returns the exit status.
inline int emit_report(const std::vector<CheckRecord>& records, const std::vector<DecaySeries>& series, int n, int N,
                       const std::filesystem::path& json_path, const std::filesystem::path& csv_path) {
    {
        std::ofstream out(json_path);
        if (!out) throw Error("cannot write report " + json_path.string());
        out << make_report(records, n, N).dump(2) << '\n';
        if (!out) throw Error("write failed: " + json_path.string());
    }
    if (!series.empty() && !csv_path.empty()) {
        std::ofstream out(csv_path);
        if (!out) throw Error("cannot write decay table " + csv_path.string());
        out << decay_csv(series);
    }
    return all_pass(records) ? 0 : 1;
}

enum class Suite { exact, constants, decay, all };

inline Suite suite_from_string(const std::string& s) {
    if (s == "exact") return Suite::exact;
    if (s == "constants") return Suite::constants;
    if (s == "decay") return Suite::decay;
    if (s == "all") return Suite::all;
    throw ParameterError("unknown suite '" + s + "' (expected exact, constants, decay or all)");
}

/// Selection and parameters for one verify run.
struct SuiteOptions {
    std::uint64_t seed = 7;
    bool only_theorem1 = false;
    bool only_theorem2 = false;
    ProductSpec product;
    CommutatorSpec commutator;
    EmbeddingSpec embedding;
    std::vector<CollectionMode> synthesis_modes{CollectionMode::annulus, CollectionMode::ball, CollectionMode::low_ball,
                                                CollectionMode::resonant_ball};
    std::vector<double> decay_alphas{0.5, 0.8, 1.0};
};

inline std::vector<CheckRecord> run_exact_suite(const TorusGrid& grid, std::uint64_t seed) {
    const DyadicSymbolBank bank(grid);
    std::vector<CheckRecord> out;
    out.push_back(check_partition_of_unity(bank));
    out.push_back(control_truncated_partition(bank));
    out.push_back(check_lp_reconstruction(bank, 20, derive_seed(seed, 1)));
    out.push_back(check_bony_identity(bank, 100, derive_seed(seed, 2)));
    out.push_back(check_support_inclusion_corpus(grid, 100, derive_seed(seed, 3)));
    out.push_back(control_aliased_product(grid, derive_seed(seed, 4)));
    out.push_back(check_example_support_arithmetic(bank, 1, derive_seed(seed, 5)));
    out.push_back(check_morrey_holder(grid, 100, default_holder_splits(), derive_seed(seed, 6)));
    out.push_back(check_psi_multiplier(bank, {2, 1, 2, 0}, 20, derive_seed(seed, 7)));
    if (grid.dim() == 1) {
        out.push_back(check_morrey_lebesgue_separation({256, 512, 1024, 2048}, 2.0, 1.0));
        if (bank.j_max() - 1 >= 8) {
            out.push_back(check_holder_zygmund_closed_form(bank, {0.3, 0.5, 0.8, 1.0}, 8));
            out.push_back(check_lipschitz_witness(bank, {4, 6, 8}));
        }
    }
    return out;
}

namespace detail {

/// Runs a constant check; a grid too coarse for its corpus becomes a failed record instead of aborting the suite.
template <class Fn>
CheckRecord guarded_run(const std::string& name, const TorusGrid& grid, Fn&& fn) {
    try {
        return fn();
    } catch (const HypothesisError&) {
        throw;
    } catch (const ParameterError& e) {
        CheckRecord r;
        r.check_name = name;
        r.n = grid.dim();
        r.N = grid.points();
        r.lhs = r.ratio = std::numeric_limits<double>::infinity();
        r.rhs = 2.0;
        r.pass = false;
        r.details["error"] = e.what();
        return r;
    }
}

}  // namespace detail

inline std::vector<CheckRecord> run_constants_suite(const TorusGrid& grid, const SuiteOptions& opt) {
    std::vector<CheckRecord> out;
    const bool all = !opt.only_theorem1 && !opt.only_theorem2;
    if (all || opt.only_theorem1) {
        out.push_back(detail::guarded_run("product_estimate_constant", grid,
                                          [&] { return estimate_theorem1_constant(opt.product, grid); }));
        out.push_back(control_guard("guard_product_estimate", json{{"s", 0.0}}, grid, [&] {
            ProductSpec bad = opt.product;
            bad.params.s = 0.0;
            estimate_theorem1_constant(bad, grid);
        }));
    }
    if (all || opt.only_theorem2) {
        out.push_back(detail::guarded_run("commutator_estimate_constant", grid,
                                          [&] { return estimate_theorem2_constant(opt.commutator, grid); }));
        out.push_back(control_guard("guard_commutator_estimate", json{{"alpha", 0.5}, {"beta", -0.1}, {"s", 0.1}}, grid, [&] {
            CommutatorSpec bad = opt.commutator;
            bad.alpha = 0.5;
            bad.beta = -0.1;
            bad.s = 0.1;
            estimate_theorem2_constant(bad, grid);
        }));
    }
    if (all) {
        for (auto mode : opt.synthesis_modes) {
            SynthesisSpec spec;
            spec.mode = mode;
            spec.seed = derive_seed(opt.seed, 10 + static_cast<std::uint64_t>(mode));
            out.push_back(detail::guarded_run("synthesis_" + synthesis_label(mode), grid,
                                              [&] { return check_synthesis_lemmas(spec, grid); }));
        }
        out.push_back(control_guard("guard_ball_synthesis", json{{"s", -0.1}}, grid, [&] {
            SynthesisSpec bad;
            bad.mode = CollectionMode::ball;
            bad.s = -0.1;
            check_synthesis_lemmas(bad, grid);
        }));
        out.push_back(detail::guarded_run("embedding_constant", grid, [&] { return check_embedding(opt.embedding, grid); }));
        out.push_back(control_guard("guard_embedding", json{{"s", grid.dim() / opt.embedding.p}}, grid, [&] {
            EmbeddingSpec bad = opt.embedding;
            bad.s = grid.dim() / bad.p;
            check_embedding(bad, grid);
        }));
    }
    return out;
}

inline std::vector<CheckRecord> run_decay_suite(const TorusGrid& grid, const SuiteOptions& opt,
                                                std::vector<DecaySeries>& series) {
    const DyadicSymbolBank bank(grid);
    std::vector<CheckRecord> out;
    for (auto kind : {CommutatorKind::block, CommutatorKind::para}) {
        for (double alpha : opt.decay_alphas) {
            DecaySeries s;
            out.push_back(check_commutator_decay(bank, alpha, kind, &s));
            series.push_back(std::move(s));
        }
    }
    return out;
}

inline std::vector<CheckRecord> run_suite(Suite suite, const TorusGrid& grid, const SuiteOptions& opt,
                                          std::vector<DecaySeries>& series) {
    std::vector<CheckRecord> out;
    auto append = [&out](std::vector<CheckRecord> more) {
        for (auto& r : more) out.push_back(std::move(r));
    };
    if (suite == Suite::exact || suite == Suite::all) append(run_exact_suite(grid, opt.seed));
    if (suite == Suite::constants || suite == Suite::all) append(run_constants_suite(grid, opt));
    if (suite == Suite::decay || suite == Suite::all) append(run_decay_suite(grid, opt, series));
    return out;
}

}  // namespace lpm::verify

// Copyright 2026 The lpmorrey Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

/*! \file
 *  \brief Periodic grids on [0,2pi)^n and the sample/coefficient containers.
 *
 *  Samples are stored row-major with axis 0 slowest. Coefficients are stored
 *  in FFT order: along each axis index i carries frequency i for i < N/2 and
 *  i - N otherwise, so the lattice is {-N/2, ..., N/2-1}^n.
 */

#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <numbers>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "lpm/error.hpp"

namespace lpm {

using complex = std::complex<double>;
using Frequency = std::array<int, 3>;

inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

class TorusGrid {
public:
    TorusGrid() = default;

    TorusGrid(int dim, int points_per_axis) : n_(dim), N_(points_per_axis) {
        if (dim < 1 || dim > 3) {
            throw ParameterError("grid dimension must be 1, 2 or 3, got " + std::to_string(dim));
        }
        if (points_per_axis < 8 || (points_per_axis & (points_per_axis - 1)) != 0) {
            throw ParameterError("points per axis must be a power of two >= 8, got " +
                                 std::to_string(points_per_axis));
        }
        std::size_t total = 1;
        for (int a = 0; a < dim; ++a) {
            if (total > std::numeric_limits<std::size_t>::max() / static_cast<std::size_t>(points_per_axis)) {
                throw ParameterError("grid size overflows the index range");
            }
            total *= static_cast<std::size_t>(points_per_axis);
        }
        size_ = total;
    }

    [[nodiscard]] int dim() const noexcept { return n_; }
    [[nodiscard]] int points() const noexcept { return N_; }
    [[nodiscard]] std::size_t size() const noexcept { return size_; }
    [[nodiscard]] double spacing() const noexcept { return kTwoPi / N_; }
    [[nodiscard]] double cell_measure() const noexcept { return std::pow(spacing(), n_); }
    [[nodiscard]] double domain_measure() const noexcept { return std::pow(kTwoPi, n_); }

    /// log2(N): number of cube scales below the full domain.
    [[nodiscard]] int levels() const noexcept {
        int m = 0;
        while ((1 << m) < N_) ++m;
        return m;
    }

    [[nodiscard]] std::array<int, 3> unravel(std::size_t idx) const noexcept {
        std::array<int, 3> out{0, 0, 0};
        for (int a = n_ - 1; a >= 0; --a) {
            out[static_cast<std::size_t>(a)] = static_cast<int>(idx % static_cast<std::size_t>(N_));
            idx /= static_cast<std::size_t>(N_);
        }
        return out;
    }

    [[nodiscard]] std::size_t ravel(const std::array<int, 3>& multi) const noexcept {
        std::size_t idx = 0;
        for (int a = 0; a < n_; ++a) {
            int i = multi[static_cast<std::size_t>(a)] % N_;
            if (i < 0) i += N_;
            idx = idx * static_cast<std::size_t>(N_) + static_cast<std::size_t>(i);
        }
        return idx;
    }

    /// Signed lattice frequency carried by FFT-ordered coefficient `idx`.
    [[nodiscard]] Frequency frequency(std::size_t idx) const noexcept {
        auto multi = unravel(idx);
        for (int a = 0; a < n_; ++a) {
            auto& k = multi[static_cast<std::size_t>(a)];
            if (k >= N_ / 2) k -= N_;
        }
        return multi;
    }

    /// FFT-ordered slot of a signed frequency; the caller guarantees it lies on the lattice.
    [[nodiscard]] std::size_t slot(const Frequency& k) const noexcept { return ravel(k); }

    [[nodiscard]] bool on_lattice(const Frequency& k) const noexcept {
        for (int a = 0; a < n_; ++a) {
            const int v = k[static_cast<std::size_t>(a)];
            if (v < -N_ / 2 || v >= N_ / 2) return false;
        }
        return true;
    }

    [[nodiscard]] double radius(std::size_t idx) const noexcept {
        const auto k = frequency(idx);
        double r2 = 0.0;
        for (int a = 0; a < n_; ++a) {
            const double v = k[static_cast<std::size_t>(a)];
            r2 += v * v;
        }
        return std::sqrt(r2);
    }

    /// |xi| at every FFT-ordered lattice slot.
    [[nodiscard]] std::vector<double> radii() const {
        std::vector<double> out(size_);
        for (std::size_t i = 0; i < size_; ++i) out[i] = radius(i);
        return out;
    }

    /// Coordinate x_axis of sample `idx`.
    [[nodiscard]] double coordinate(std::size_t idx, int axis) const noexcept {
        return spacing() * unravel(idx)[static_cast<std::size_t>(axis)];
    }

    friend bool operator==(const TorusGrid& a, const TorusGrid& b) noexcept {
        return a.n_ == b.n_ && a.N_ == b.N_;
    }

    [[nodiscard]] std::string describe() const {
        return "n=" + std::to_string(n_) + ", N=" + std::to_string(N_);
    }

private:
    int n_ = 1;
    int N_ = 8;
    std::size_t size_ = 8;
};

inline void require_same_grid(const TorusGrid& a, const TorusGrid& b, const char* op) {
    if (!(a == b)) {
        throw GridMismatch(std::string(op) + ": grid mismatch (" + a.describe() + " vs " + b.describe() + ")");
    }
}

inline void require_finite(std::span<const complex> values, const char* where) {
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (!std::isfinite(values[i].real()) || !std::isfinite(values[i].imag())) {
            throw NonFiniteValue(i, where);
        }
    }
}

/// Complex samples of a function on a TorusGrid.
class GridFunction {
public:
    GridFunction() = default;

    explicit GridFunction(const TorusGrid& grid) : grid_(grid), values_(grid.size()) {}

    GridFunction(const TorusGrid& grid, std::vector<complex> values)
        : grid_(grid), values_(std::move(values)) {
        if (values_.size() != grid_.size()) {
            throw ParameterError("GridFunction: expected " + std::to_string(grid_.size()) + " samples, got " +
                                 std::to_string(values_.size()));
        }
        require_finite(values_, "GridFunction");
    }

    template <class Fn>
    static GridFunction sample(const TorusGrid& grid, Fn&& fn) {
        std::vector<complex> v(grid.size());
        for (std::size_t i = 0; i < v.size(); ++i) {
            const auto m = grid.unravel(i);
            const double h = grid.spacing();
            v[i] = complex(fn(std::array<double, 3>{h * m[0], h * m[1], h * m[2]}));
        }
        return GridFunction(grid, std::move(v));
    }

    [[nodiscard]] const TorusGrid& grid() const noexcept { return grid_; }
    [[nodiscard]] std::span<const complex> values() const noexcept { return values_; }
    [[nodiscard]] const complex& operator[](std::size_t i) const noexcept { return values_[i]; }
    [[nodiscard]] std::size_t size() const noexcept { return values_.size(); }

    [[nodiscard]] double sup_norm() const noexcept {
        double m = 0.0;
        for (const auto& v : values_) m = std::max(m, std::abs(v));
        return m;
    }

    [[nodiscard]] double max_imag() const noexcept {
        double m = 0.0;
        for (const auto& v : values_) m = std::max(m, std::abs(v.imag()));
        return m;
    }

    [[nodiscard]] GridFunction real_part() const {
        std::vector<complex> v(values_.size());
        for (std::size_t i = 0; i < v.size(); ++i) v[i] = values_[i].real();
        return GridFunction(grid_, std::move(v));
    }

    [[nodiscard]] GridFunction imag_part() const {
        std::vector<complex> v(values_.size());
        for (std::size_t i = 0; i < v.size(); ++i) v[i] = values_[i].imag();
        return GridFunction(grid_, std::move(v));
    }

    friend GridFunction operator+(const GridFunction& a, const GridFunction& b) {
        require_same_grid(a.grid_, b.grid_, "operator+");
        std::vector<complex> v(a.values_);
        for (std::size_t i = 0; i < v.size(); ++i) v[i] += b.values_[i];
        return GridFunction(a.grid_, std::move(v));
    }

    friend GridFunction operator-(const GridFunction& a, const GridFunction& b) {
        require_same_grid(a.grid_, b.grid_, "operator-");
        std::vector<complex> v(a.values_);
        for (std::size_t i = 0; i < v.size(); ++i) v[i] -= b.values_[i];
        return GridFunction(a.grid_, std::move(v));
    }

    friend GridFunction operator*(complex c, const GridFunction& a) {
        std::vector<complex> v(a.values_);
        for (auto& x : v) x *= c;
        return GridFunction(a.grid_, std::move(v));
    }

    /// Pointwise product of samples. Aliases; see dealiased_product for the spectral-exact one.
    [[nodiscard]] static GridFunction pointwise(const GridFunction& a, const GridFunction& b) {
        require_same_grid(a.grid_, b.grid_, "pointwise");
        std::vector<complex> v(a.values_);
        for (std::size_t i = 0; i < v.size(); ++i) v[i] *= b.values_[i];
        return GridFunction(a.grid_, std::move(v));
    }

private:
    TorusGrid grid_;
    std::vector<complex> values_;
};

/// Fourier coefficients on the integer lattice, FFT-ordered.
///
/// c_k approximates (2pi)^{-n/2} * integral over [0,2pi)^n of f(x) exp(-i k.x) dx,
/// which makes sum |c_k|^2 equal the h^n-weighted l2 norm of the samples.
class SpectralFunction {
public:
    SpectralFunction() = default;

    explicit SpectralFunction(const TorusGrid& grid) : grid_(grid), coeffs_(grid.size()) {}

    SpectralFunction(const TorusGrid& grid, std::vector<complex> coeffs)
        : grid_(grid), coeffs_(std::move(coeffs)) {
        if (coeffs_.size() != grid_.size()) {
            throw ParameterError("SpectralFunction: expected " + std::to_string(grid_.size()) +
                                 " coefficients, got " + std::to_string(coeffs_.size()));
        }
        require_finite(coeffs_, "SpectralFunction");
    }

    [[nodiscard]] const TorusGrid& grid() const noexcept { return grid_; }
    [[nodiscard]] std::span<const complex> coeffs() const noexcept { return coeffs_; }
    [[nodiscard]] std::size_t size() const noexcept { return coeffs_.size(); }
    [[nodiscard]] const complex& operator[](std::size_t i) const noexcept { return coeffs_[i]; }

    [[nodiscard]] complex at(const Frequency& k) const {
        if (!grid_.on_lattice(k)) return {};
        return coeffs_[grid_.slot(k)];
    }

    [[nodiscard]] double max_abs() const noexcept {
        double m = 0.0;
        for (const auto& c : coeffs_) m = std::max(m, std::abs(c));
        return m;
    }

    SpectralFunction& operator+=(const SpectralFunction& o) {
        require_same_grid(grid_, o.grid_, "SpectralFunction::operator+=");
        for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
        return *this;
    }

    SpectralFunction& operator-=(const SpectralFunction& o) {
        require_same_grid(grid_, o.grid_, "SpectralFunction::operator-=");
        for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] -= o.coeffs_[i];
        return *this;
    }

    friend SpectralFunction operator+(SpectralFunction a, const SpectralFunction& b) { return a += b; }
    friend SpectralFunction operator-(SpectralFunction a, const SpectralFunction& b) { return a -= b; }

private:
    TorusGrid grid_;
    std::vector<complex> coeffs_;
};

}  // namespace lpm

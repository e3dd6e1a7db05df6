// Copyright 2026 The lpmorrey Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

// LPBM binary function files.
//
//   offset  size  field
//   0       4     magic "LPBM"
//   4       4     version, u32 LE (currently 1)
//   8       4     n, u32 LE
//   12      4     N, u32 LE
//   16      4     flag, u32 LE: 0 real, 1 complex
//   20      16*N^n  (re, im) f64 LE pairs, row-major samples
//
// Values are copied bit for bit, so write(read(x)) == x.

#include <algorithm>
#include <bit>
#include <cstdint>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <string>
#include <vector>

#include "lpm/grid.hpp"

namespace lpm::io {

inline constexpr char kMagic[4] = {'L', 'P', 'B', 'M'};
inline constexpr std::uint32_t kVersion = 1;

enum class ValueKind : std::uint32_t { real = 0, complex = 1 };

struct LpbmFile {
    GridFunction function;
    ValueKind kind = ValueKind::complex;
};

namespace detail {

template <class T>
void put_le(std::vector<unsigned char>& out, T value) {
    unsigned char bytes[sizeof(T)];
    std::memcpy(bytes, &value, sizeof(T));
    if constexpr (std::endian::native == std::endian::big) std::reverse(bytes, bytes + sizeof(T));
    out.insert(out.end(), bytes, bytes + sizeof(T));
}

template <class T>
T get_le(const unsigned char* in) {
    unsigned char bytes[sizeof(T)];
    std::memcpy(bytes, in, sizeof(T));
    if constexpr (std::endian::native == std::endian::big) std::reverse(bytes, bytes + sizeof(T));
    T value;
    std::memcpy(&value, bytes, sizeof(T));
    return value;
}

}  // namespace detail

inline std::vector<unsigned char> encode(const GridFunction& f, ValueKind kind) {
    std::vector<unsigned char> out;
    out.reserve(20 + 16 * f.size());
    out.insert(out.end(), kMagic, kMagic + 4);
    detail::put_le<std::uint32_t>(out, kVersion);
    detail::put_le<std::uint32_t>(out, static_cast<std::uint32_t>(f.grid().dim()));
    detail::put_le<std::uint32_t>(out, static_cast<std::uint32_t>(f.grid().points()));
    detail::put_le<std::uint32_t>(out, static_cast<std::uint32_t>(kind));
    for (const auto& v : f.values()) {
        detail::put_le<double>(out, v.real());
        detail::put_le<double>(out, v.imag());
    }
    return out;
}

/// Real when every imaginary part is exactly zero.
inline ValueKind detect_kind(const GridFunction& f) {
    return f.max_imag() == 0.0 ? ValueKind::real : ValueKind::complex;
}

inline LpbmFile decode(const std::vector<unsigned char>& bytes) {
    if (bytes.size() < 20 || std::memcmp(bytes.data(), kMagic, 4) != 0) {
        throw FormatError("not an LPBM file (bad magic)");
    }
    const auto version = detail::get_le<std::uint32_t>(bytes.data() + 4);
    if (version != kVersion) throw FormatError("unsupported LPBM version " + std::to_string(version));
    const auto n = detail::get_le<std::uint32_t>(bytes.data() + 8);
    const auto N = detail::get_le<std::uint32_t>(bytes.data() + 12);
    const auto flag = detail::get_le<std::uint32_t>(bytes.data() + 16);
    if (flag > 1) throw FormatError("bad real/complex flag " + std::to_string(flag));
    if (n < 1 || n > 3 || N > (1u << 24)) throw FormatError("bad LPBM grid header");
    TorusGrid grid;
    try {
        grid = TorusGrid(static_cast<int>(n), static_cast<int>(N));
    } catch (const ParameterError& e) {
        throw FormatError(std::string("bad LPBM grid header: ") + e.what());
    }
    if (bytes.size() != 20 + 16 * grid.size()) {
        throw FormatError("LPBM payload has " + std::to_string(bytes.size() - 20) + " bytes, expected " +
                          std::to_string(16 * grid.size()));
    }
    std::vector<complex> values(grid.size());
    const unsigned char* p = bytes.data() + 20;
    for (auto& v : values) {
        v = complex(detail::get_le<double>(p), detail::get_le<double>(p + 8));
        p += 16;
    }
    return {GridFunction(grid, std::move(values)), static_cast<ValueKind>(flag)};
}

inline void write_lpbm(const std::filesystem::path& path, const GridFunction& f, ValueKind kind) {
    const auto bytes = encode(f, kind);
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot open " + path.string() + " for writing");
    out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
    if (!out) throw Error("write failed: " + path.string());
}

inline void write_lpbm(const std::filesystem::path& path, const GridFunction& f) {
    write_lpbm(path, f, detect_kind(f));
}

inline LpbmFile read_lpbm(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open " + path.string());
    std::vector<unsigned char> bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return decode(bytes);
}

}  // namespace lpm::io

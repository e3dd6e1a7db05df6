// Copyright 2026 The lpmorrey Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

/*! \file
 *  \brief Exception types shared by every lpm module.
 *
 *  ParameterError and HypothesisError map to the CLI's usage exit code (2);
 *  everything else derived from lpm::Error maps to a runtime failure (1).
 */

#include <stdexcept>
#include <string>

namespace lpm {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Invalid exponents, scales, or generator parameters.
class ParameterError : public Error {
public:
    using Error::Error;
};

/// An inequality was requested outside the parameter window where it holds.
class HypothesisError : public ParameterError {
public:
    using ParameterError::ParameterError;
};

/// Operands living on different grids.
class GridMismatch : public Error {
public:
    using Error::Error;
};

/// NaN or Inf encountered in sample or coefficient data.
class NonFiniteValue : public Error {
public:
    NonFiniteValue(std::size_t index, const std::string& where)
        : Error(where + ": non-finite value at index " + std::to_string(index)), index_(index) {}

    [[nodiscard]] std::size_t index() const noexcept { return index_; }

private:
    std::size_t index_;
};

/// Malformed or unreadable LPBM file.
class FormatError : public Error {
public:
    using Error::Error;
};

}  // namespace lpm

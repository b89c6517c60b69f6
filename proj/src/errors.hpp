// SPDX-FileCopyrightText: 2026 The logdet authors
//
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace logdet {

/// Broad failure class; maps one-to-one onto the C API status codes.
enum class ErrorKind {
    invalid_argument,
    format,
    io,
    not_positive_definite,
    numerical,
    shift_too_small,
};

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(what), kind_(kind)
    {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

class ContractViolation : public Error {
public:
    explicit ContractViolation(const std::string& what)
        : Error(ErrorKind::invalid_argument, what)
    {}
};

class FormatError : public Error {
public:
    /// `line` is 1-based; 0 means the error is not tied to a line.
    FormatError(const std::string& what, std::int64_t line = 0)
        : Error(ErrorKind::format,
                line > 0 ? "line " + std::to_string(line) + ": " + what
                         : what),
          line_(line)
    {}

    std::int64_t line() const noexcept { return line_; }

private:
    std::int64_t line_;
};

class IoError : public Error {
public:
    explicit IoError(const std::string& what) : Error(ErrorKind::io, what) {}
};

class NotPositiveDefinite : public Error {
public:
    NotPositiveDefinite(const std::string& what, std::int64_t index)
        : Error(ErrorKind::not_positive_definite, what), index_(index)
    {}

    /// Failing pivot (Cholesky) or eigenvalue index, in the caller's ordering.
    std::int64_t index() const noexcept { return index_; }

private:
    std::int64_t index_;
};

class NumericalError : public Error {
public:
    explicit NumericalError(const std::string& what)
        : Error(ErrorKind::numerical, what)
    {}
};

class ShiftTooSmall : public Error {
public:
    explicit ShiftTooSmall(const std::string& what)
        : Error(ErrorKind::shift_too_small, what)
    {}
};

}  // namespace logdet

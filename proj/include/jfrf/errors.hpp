#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace jfrf {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class InvalidArgument : public Error {
public:
    using Error::Error;
};

/// Input data that the requested computation cannot handle (isolated vertex,
/// constant series, all-zero signal, ...).
class DegenerateInput : public Error {
public:
    using Error::Error;
};

/// Eigenvector matrix condition number above the configured limit, or a
/// decomposition that fails to reconstruct its input.
class IllConditioned : public Error {
public:
    IllConditioned(const std::string& what, double estimate)
        : Error(what), estimate_(estimate) {}
    double estimate() const noexcept { return estimate_; }

private:
    double estimate_;
};

/// Eigenvalue on (or numerically on) the negative real axis; the principal
/// logarithm is not uniquely defined there.
class BranchAmbiguity : public Error {
public:
    using Error::Error;
};

class SingularMatrix : public Error {
public:
    using Error::Error;
};

class RankDeficient : public Error {
public:
    RankDeficient(const std::string& what, double condition)
        : Error(what), condition_(condition) {}
    double condition() const noexcept { return condition_; }

private:
    double condition_;
};

class CapacityError : public Error {
public:
    using Error::Error;
};

class ContractViolation : public Error {
public:
    using Error::Error;
};

class FingerprintMismatch : public Error {
public:
    using Error::Error;
};

/// CSV / checkpoint parse failure. Row and column are 1-based; 0 means unknown.
class ParseError : public Error {
public:
    ParseError(const std::string& what, std::size_t row = 0, std::size_t column = 0)
        : Error(what), row_(row), column_(column) {}
    std::size_t row() const noexcept { return row_; }
    std::size_t column() const noexcept { return column_; }

private:
    std::size_t row_;
    std::size_t column_;
};

}  // namespace jfrf

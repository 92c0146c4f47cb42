#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace orbitsum {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed or inconsistent input: bad config fields, invalid parameters,
/// out-of-range tolerances.
class ConfigError : public Error {
public:
    using Error::Error;
};

class DimensionError : public ConfigError {
public:
    DimensionError(std::size_t expected, std::size_t actual, const std::string& what)
        : ConfigError(what + ": dimension mismatch (" + std::to_string(expected) + " vs " +
                      std::to_string(actual) + ")"),
          expected_(expected),
          actual_(actual) {}

    std::size_t expected() const noexcept { return expected_; }
    std::size_t actual() const noexcept { return actual_; }

private:
    std::size_t expected_;
    std::size_t actual_;
};

/// Runtime numeric failure (overflow to infinity, NaN, violated numeric
/// post-conditions).
class NumericError : public Error {
public:
    using Error::Error;
};

/// A map declared strong-contraction(c) produced a gap ratio above c.
class MisdeclaredContraction : public NumericError {
public:
    using NumericError::NumericError;
};

/// A potential evaluated below its declared lower bound.
class InconsistentBound : public Error {
public:
    using Error::Error;
};

/// The requested check has no meaning at this input (e.g. phi(x) = +inf, or a
/// non-converged orbit potential).
class NotCheckable : public Error {
public:
    using Error::Error;
};

}  // namespace orbitsum

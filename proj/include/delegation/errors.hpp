#pragma once

#include <stdexcept>
#include <string>

namespace delegation {

// Base class for all errors raised by this library.
struct Error : std::runtime_error {
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Invalid setting/cost/set configuration (bad invariants, violated range
// conditions, malformed JSON values).
struct ConfigError : Error {
    using Error::Error;
};

// A requested value falls outside the working range or the operation's domain.
struct RangeError : Error {
    using Error::Error;
};

// Operation requires a different payoff normalization.
struct NormalizationError : Error {
    using Error::Error;
};

// Numerical degeneracy (vanishing tail mass, zero slope, lost bracket).
struct NumericError : Error {
    using Error::Error;
};

} // namespace delegation

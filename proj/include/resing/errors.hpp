#pragma once

#include <stdexcept>
#include <string>

namespace resing {

/// Base class for all engine errors. Legitimate negative verdicts
/// (non-permissible centers, equivalence counterexamples) are returned
/// as values, never thrown.
struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Mismatched variable counts between values that must share a chart.
struct DimensionMismatch : Error {
    explicit DimensionMismatch(const std::string& msg) : Error(msg) {}
};

/// A division that was required to be exact left a remainder.
struct NonExactDivision : Error {
    std::string witness;
    NonExactDivision(const std::string& msg, std::string w)
        : Error(msg + " (witness: " + w + ")"), witness(std::move(w)) {}
};

/// A resource guard tripped: the computation was cut off, not wrong.
struct FuelExhausted : Error {
    explicit FuelExhausted(const std::string& msg) : Error(msg) {}
};

/// Input is outside the implemented scope (non-rational singular point,
/// non-rectifiable component, no monic direction within the ladder).
struct UnsupportedInput : Error {
    explicit UnsupportedInput(const std::string& msg) : Error(msg) {}
};

/// An internal law that must hold by construction failed; always a bug
/// or a misuse, never a data-dependent verdict.
struct InvariantViolation : Error {
    explicit InvariantViolation(const std::string& msg) : Error(msg) {}
};

/// Malformed problem input (parse errors, bad field values).
struct InputError : Error {
    explicit InputError(const std::string& msg) : Error(msg) {}
};

} // namespace resing

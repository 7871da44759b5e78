#pragma once

#include <stdexcept>
#include <string>

namespace blindcomp {

// Base class for all library errors.
struct Error : std::runtime_error {
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Bad user-supplied value (dimension 0, parameter outside its range, ...).
struct InvalidInput : Error {
    explicit InvalidInput(const std::string& what) : Error(what) {}
};

// Two objects that must share an alphabet size do not.
struct DimensionMismatch : InvalidInput {
    explicit DimensionMismatch(const std::string& what) : InvalidInput(what) {}
};

// KL divergence requested with supp(p) not contained in supp(q).
struct DivergenceUndefined : Error {
    explicit DivergenceUndefined(const std::string& what) : Error(what) {}
};

// A documented precondition does not hold for the given inputs.  The message
// carries the measured quantity that violated the constraint.
struct ConstraintViolated : Error {
    explicit ConstraintViolated(const std::string& what) : Error(what) {}
};

// Input outside the family an operation is defined for.
struct UnsupportedInput : InvalidInput {
    explicit UnsupportedInput(const std::string& what) : InvalidInput(what) {}
};

// Internal protocol table inconsistency (empty bucket reached, ...).
struct ProtocolError : Error {
    explicit ProtocolError(const std::string& what) : Error(what) {}
};

// A guaranteed postcondition failed; indicates a bug, not bad input.
struct InvariantViolation : Error {
    explicit InvariantViolation(const std::string& what) : Error(what) {}
};

}  // namespace blindcomp

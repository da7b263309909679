#pragma once

#include <stdexcept>
#include <string>

namespace fincov {

/// Malformed or out-of-contract arguments supplied by the caller.
class InputError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A documented precondition of an operation does not hold, e.g. asking for
/// overlay verdicts on a family that is not a covering structure.
class PreconditionError : public InputError {
public:
    PreconditionError(const std::string& what, std::string offending = {})
        : InputError(what), offending_(std::move(offending)) {}

    /// Identifier of the object that broke the precondition (cover element,
    /// point name, ...), empty when not applicable.
    const std::string& offending() const noexcept { return offending_; }

private:
    std::string offending_;
};

/// Raised when an internal consistency assertion fails. Under the stated
/// hypotheses these are unreachable; callers should treat them as bugs or as
/// counterexamples to a claimed result.
class InvariantViolation : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

inline void require(bool condition, const std::string& message) {
    if (!condition) {
        throw InputError(message);
    }
}

inline void ensure(bool condition, const std::string& message) {
    if (!condition) {
        throw InvariantViolation(message);
    }
}

} // namespace fincov

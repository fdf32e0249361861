#pragma once

#include <stdexcept>
#include <string>

namespace filn {

/// Error kinds raised by the engine. Violations of algebraic identities,
/// witness verdicts and inconclusive refutations are *results*, not errors;
/// only contract breaches end up here.
enum class ErrorKind {
    ZeroDenominator,
    MissingVariable,
    IndexOutOfRange,
    DimensionMismatch,
    SingularMatrix,
    WrongDimension,
    InvalidT,
    SymbolicBlowup,
    ConstraintViolated,
    InvalidId,
    ParseError,
    BadInput,
    Internal,
};

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& msg)
        : std::runtime_error(msg), kind_(kind) {}

    ErrorKind kind() const { return kind_; }

private:
    ErrorKind kind_;
};

[[noreturn]] inline void raise(ErrorKind kind, const std::string& msg) {
    throw Error(kind, msg);
}

} // namespace filn

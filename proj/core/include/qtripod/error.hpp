#pragma once

#include <stdexcept>
#include <string>

namespace qtripod {

/// Bad user input or a violated precondition. Maps to CLI exit code 1.
class ValidationError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// The closed-form engine was asked to solve a model outside its premises
/// (unequal couplings/detunings or unequal lower-level amplitudes).
class PremiseError : public ValidationError {
public:
    using ValidationError::ValidationError;
};

/// Failures during a numerical run (negative radicands, unstable steps, I/O). Exit code 2.
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace qtripod

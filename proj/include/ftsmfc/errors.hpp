#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace ftsmfc {

// Argument outside the domain of a formula (non-finite input, negative V, bad exponent).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

class DimensionError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Base for failures that abort a simulation: singular solves and divergence.
class NumericalError : public std::runtime_error {
public:
    explicit NumericalError(const std::string& what, std::ptrdiff_t step = -1)
        : std::runtime_error(what), step_(step) {}

    // Control step at which the failure happened, -1 when not tied to a run.
    std::ptrdiff_t step() const noexcept { return step_; }

private:
    std::ptrdiff_t step_;
};

class SingularMatrixError : public NumericalError {
public:
    using NumericalError::NumericalError;
};

class DivergenceError : public NumericalError {
public:
    using NumericalError::NumericalError;
};

}  // namespace ftsmfc

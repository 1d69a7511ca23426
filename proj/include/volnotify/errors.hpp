#ifndef VOLNOTIFY_ERRORS_HPP
#define VOLNOTIFY_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace volnotify {

// Bad input: out-of-domain arguments, malformed instances, violated
// preconditions. The CLI maps this family to exit code 1.
class ValidationError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class DimensionError : public ValidationError {
public:
    using ValidationError::ValidationError;
};

class PreconditionError : public ValidationError {
public:
    using ValidationError::ValidationError;
};

// Numerical failures. The CLI maps this family to exit code 2.
class SolverError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class InfeasibleError : public SolverError {
public:
    InfeasibleError(const std::string& what, int witness_row)
        : SolverError(what), witness_row_(witness_row) {}

    // Index of a constraint row that stays violated at the phase-one optimum,
    // or -1 when no single row can be blamed.
    int witness_row() const { return witness_row_; }

private:
    int witness_row_;
};

class UnboundedError : public SolverError {
public:
    using SolverError::SolverError;
};

class CapacityError : public SolverError {
public:
    using SolverError::SolverError;
};

} // namespace volnotify

#endif // VOLNOTIFY_ERRORS_HPP

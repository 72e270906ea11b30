// Exception types shared by all wsdirac modules.
#ifndef WSDIRAC_ERRORS_HPP
#define WSDIRAC_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace wsdirac {

// Base class so callers can catch any library failure in one clause.
struct Error : std::runtime_error {
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Argument outside the mathematical domain of an operation.
struct DomainError : Error {
    explicit DomainError(const std::string& what) : Error(what) {}
};

// Gamma function evaluated at (or within tolerance of) a non-positive integer.
struct PoleError : Error {
    explicit PoleError(const std::string& what) : Error(what) {}
};

// A result would exceed the representable range in magnitude.
struct OverflowError : Error {
    explicit OverflowError(const std::string& what) : Error(what) {}
};

// An iteration failed to reach its stopping criterion within the allowed work.
struct ConvergenceError : Error {
    explicit ConvergenceError(const std::string& what) : Error(what) {}
};

// A connection formula hit a degenerate parameter combination (c-a-b integral).
struct DegenerateError : Error {
    explicit DegenerateError(const std::string& what) : Error(what) {}
};

// Energy lies in a band around a kinematic singularity (E = W or |E| = m0)
// where the closed-form coefficients degenerate.
struct SingularEnergy : Error {
    SingularEnergy(double energy, const std::string& what)
        : Error(what), E(energy) {}
    double E;
};

// A bound-state operation was asked to use an E that does not satisfy the
// eigenvalue condition to the required residual.
struct NotAnEigenvalue : Error {
    NotAnEigenvalue(double energy, const std::string& what)
        : Error(what), E(energy) {}
    double E;
};

// A normalization grid truncates while the density is still non-negligible.
struct TailError : Error {
    explicit TailError(const std::string& what) : Error(what) {}
};

// A numerical integration left the trusted regime (state norm exploded).
struct StepError : Error {
    explicit StepError(const std::string& what) : Error(what) {}
};

} // namespace wsdirac

#endif

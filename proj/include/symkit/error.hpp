#pragma once

#include <stdexcept>
#include <string>

namespace symkit {

/// Base class for every error raised by the toolkit.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
    virtual const char* kind() const noexcept { return "error"; }
};

/// Invalid family, size or malformed descriptor.
class ConstructionError : public Error {
public:
    using Error::Error;
    const char* kind() const noexcept override { return "construction"; }
};

/// Root data violating the reduced/non-reduced multiple rule.
class ValidationError : public Error {
public:
    using Error::Error;
    const char* kind() const noexcept override { return "validation"; }
};

/// Argument outside the domain of an operation (wall, dimension mismatch, ...).
class DomainError : public Error {
public:
    using Error::Error;
    const char* kind() const noexcept override { return "domain"; }
};

/// Operation unavailable for the given space or mode.
class CapabilityError : public Error {
public:
    using Error::Error;
    const char* kind() const noexcept override { return "capability"; }
};

/// A documented precondition on the numeric parameters does not hold.
class PreconditionError : public Error {
public:
    using Error::Error;
    const char* kind() const noexcept override { return "precondition"; }
};

/// Quadrature did not reach the requested tolerance. Never used for divergence.
class ToleranceError : public Error {
public:
    explicit ToleranceError(const std::string& what, std::string diagnostics = {})
        : Error(what), diagnostics_(std::move(diagnostics)) {}
    const char* kind() const noexcept override { return "tolerance"; }
    const std::string& diagnostics() const noexcept { return diagnostics_; }

private:
    std::string diagnostics_;
};

/// Grid-backed function too coarse for the requested derivative.
class ResolutionError : public Error {
public:
    using Error::Error;
    const char* kind() const noexcept override { return "resolution"; }
};

/// A finite value was requested from an integral detected as divergent.
class DivergenceError : public Error {
public:
    using Error::Error;
    const char* kind() const noexcept override { return "divergence"; }
};

/// Kernel evaluated at its singular point.
class SingularityError : public Error {
public:
    using Error::Error;
    const char* kind() const noexcept override { return "singularity"; }
};

}  // namespace symkit

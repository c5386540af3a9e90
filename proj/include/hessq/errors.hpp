#pragma once

#include <stdexcept>
#include <string>

namespace hessq {

/// Thrown when a matrix leaves the elliptic cone: some generalized
/// eigenvalue relative to the background metric is <= 0.
class AdmissibilityError : public std::runtime_error {
public:
    AdmissibilityError(const std::string& what, double min_eigenvalue)
        : std::runtime_error(what), min_eigenvalue_(min_eigenvalue) {}

    double min_eigenvalue() const noexcept { return min_eigenvalue_; }

private:
    double min_eigenvalue_;
};

/// Requested operation is not defined for the given domain kind
/// (e.g. distance-to-boundary on a torus).
class UnsupportedOperation : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Bad grid/solver configuration (grid too small for a stencil, ...).
class ConfigError : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Continuity path stalled or Newton line search failed permanently.
class NonconvergenceError : public std::runtime_error {
public:
    NonconvergenceError(const std::string& what, std::string diagnostics)
        : std::runtime_error(what), diagnostics_(std::move(diagnostics)) {}

    const std::string& diagnostics() const noexcept { return diagnostics_; }

private:
    std::string diagnostics_;
};

} // namespace hessq

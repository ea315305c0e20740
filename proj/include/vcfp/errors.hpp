#pragma once

#include <stdexcept>
#include <string>

namespace vcfp {

/// Invalid parameters, mesh or configuration file. Maps to exit code 2.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A solver failed to converge or a factorization broke down. Maps to exit code 3.
class SolverError : public std::runtime_error {
public:
    explicit SolverError(const std::string& what, double last_residual = 0.0)
        : std::runtime_error(what), last_residual_(last_residual) {}

    double last_residual() const noexcept { return last_residual_; }

private:
    double last_residual_;
};

/// A structural assumption was violated: negative density out of a solver,
/// non-positive reference density, dimension mismatch.
class StructuralError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

} // namespace vcfp

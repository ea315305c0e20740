#pragma once

#include "vcfp/density.hpp"
#include "vcfp/operators.hpp"

#include <string>

namespace vcfp {

/// Normalized stationary density of a generator.
struct SteadyState {
    DensityField density;
    double residual = 0.0;  ///< max |A p*| / max p*
    std::string method;
    std::size_t iterations = 0;
};

/// max |A p| / max p.
double stationarity_residual(const Generator& generator, const DensityField& field);

/// Shift-invert power iteration on (sigma I - A), sigma = 1e-8 max|diag A|,
/// starting from the uniform probability density.
SteadyState solve_steady_nullspace(const Generator& generator, double tol = 1e-10, std::size_t max_iter = 200);

/// Same as above from a caller-supplied positive starting density.
SteadyState solve_steady_nullspace(const Generator& generator, const DensityField& start, double tol,
                                   std::size_t max_iter);

/// Implicit Euler march from the uniform density until
/// max |p_{n+1} - p_n| / dt <= tol.
SteadyState solve_steady_marching(const Generator& generator, double dt, double tol = 1e-11,
                                  std::size_t max_steps = 100000);

SteadyState solve_steady_marching(const Generator& generator, const DensityField& start, double dt,
                                  double tol, std::size_t max_steps);

} // namespace vcfp

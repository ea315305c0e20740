#include "vcfp/steady.hpp"

#include "vcfp/banded_lu.hpp"
#include "vcfp/errors.hpp"
#include "vcfp/evolve.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace vcfp {

namespace {

constexpr double negativity_tolerance = 1e-12;

DensityField uniform_density(const Grid& grid) {
    DensityField p(grid, 1.0);
    p.normalize();
    return p;
}

void check_sign(const DensityField& p) {
    const double lowest = p.min();
    if (lowest < -negativity_tolerance)
        throw StructuralError("steady solver produced a negative cell value " + std::to_string(lowest));
}

double max_abs_difference(std::span<const double> x, std::span<const double> y) {
    double d = 0.0;
    for (std::size_t k = 0; k < x.size(); ++k) d = std::max(d, std::abs(x[k] - y[k]));
    return d;
}

} // namespace

double stationarity_residual(const Generator& generator, const DensityField& field) {
    const std::vector<double> rate = apply(generator, field);
    double r = 0.0;
    for (double x : rate) r = std::max(r, std::abs(x));
    return r / field.max();
}

SteadyState solve_steady_nullspace(const Generator& generator, double tol, std::size_t max_iter) {
    return solve_steady_nullspace(generator, uniform_density(generator.grid), tol, max_iter);
}

SteadyState solve_steady_nullspace(const Generator& generator, const DensityField& start, double tol,
                                   std::size_t max_iter) {
    if (!(tol > 0.0) || tol > 1e-6)
        throw ConfigError("steady tolerance must lie in (0, 1e-6]");
    const double shift = 1e-8 * inspect_structure(generator).max_abs_diagonal;
    const BandedLu lu(shifted_system(generator.matrix, shift, 1.0));

    DensityField p = start;
    p.normalize();
    double residual = stationarity_residual(generator, p);
    for (std::size_t it = 1; it <= max_iter; ++it) {
        lu.solve_in_place(p.values());
        p.normalize();
        check_sign(p);
        residual = stationarity_residual(generator, p);
        if (residual <= tol) {
            // One polishing solve; keep it when it lowers the residual.
            DensityField polished = p;
            lu.solve_in_place(polished.values());
            polished.normalize();
            check_sign(polished);
            const double polished_residual = stationarity_residual(generator, polished);
            if (polished_residual < residual) return SteadyState{std::move(polished), polished_residual, "nullspace", it + 1};
            return SteadyState{std::move(p), residual, "nullspace", it};
        }
    }
    throw SolverError("shift-invert iteration did not converge in " + std::to_string(max_iter) + " iterations",
                      residual);
}

SteadyState solve_steady_marching(const Generator& generator, double dt, double tol, std::size_t max_steps) {
    return solve_steady_marching(generator, uniform_density(generator.grid), dt, tol, max_steps);
}

SteadyState solve_steady_marching(const Generator& generator, const DensityField& start, double dt, double tol,
                                  std::size_t max_steps) {
    if (!(dt > 0.0)) throw ConfigError("marching time step must be positive");
    if (!(tol > 0.0)) throw ConfigError("marching tolerance must be positive");
    const ImplicitStepper stepper(generator, dt);

    DensityField p = start;
    p.normalize();
    std::vector<double> previous(p.values().begin(), p.values().end());
    for (std::size_t step = 1; step <= max_steps; ++step) {
        stepper.step_in_place(p);
        const double change = max_abs_difference(p.values(), previous) / dt;
        if (change <= tol) {
            check_sign(p);
            p.normalize();
            const double residual = stationarity_residual(generator, p);
            return SteadyState{std::move(p), residual, "marching", step};
        }
        std::copy(p.values().begin(), p.values().end(), previous.begin());
    }
    throw SolverError("implicit Euler march did not become stationary in " + std::to_string(max_steps) + " steps",
                      stationarity_residual(generator, p));
}

} // namespace vcfp

#include "vcfp/evolve.hpp"

#include "vcfp/errors.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace vcfp {

namespace {

// Column sums of the assembled generator are zero only to ~1e-13, which
// drifts the mass by ~1e-14 per step. Rescale to the pre-step mass.
void restore_mass(DensityField& field, double mass) {
    const double now = field.mass();
    if (now > 0.0 && mass > 0.0) {
        const double factor = mass / now;
        for (double& x : field.values()) x *= factor;
    }
}

} // namespace

std::string_view scheme_name(Scheme s) {
    return s == Scheme::ImplicitEuler ? "implicit-euler" : "lie-split";
}

Scheme parse_scheme(std::string_view name) {
    if (name == "implicit-euler") return Scheme::ImplicitEuler;
    if (name == "lie-split") return Scheme::LieSplit;
    throw ConfigError("unknown scheme '" + std::string(name) + "' (expected implicit-euler or lie-split)");
}

void EvolveConfig::validate() const {
    if (!(dt > 0.0) || !std::isfinite(dt)) throw ConfigError("dt must be positive");
    if (!(t_end >= dt) || !std::isfinite(t_end)) throw ConfigError("t_end must be at least dt");
    if (snapshot_stride == 0) throw ConfigError("snapshot_stride must be positive");
}

std::size_t EvolveConfig::step_count() const {
    return static_cast<std::size_t>(std::llround(t_end / dt));
}

GeneratorSet assemble_generator_set(const Grid& grid, const ModelParams& params) {
    GeneratorSet set{assemble_transport_v(grid, params), assemble_fokker_planck_g(grid, params),
                     assemble_transport_v(grid, params)};
    set.full.matrix += set.fokker_planck.matrix;
    set.full.matrix.makeCompressed();
    return set;
}

ImplicitStepper::ImplicitStepper(const Generator& generator, double dt)
    : grid_(generator.grid), dt_(dt), lu_(shifted_system(generator.matrix, 1.0, dt)) {
    if (!(dt > 0.0)) throw ConfigError("dt must be positive");
}

void ImplicitStepper::step_in_place(DensityField& field) const {
    if (!(field.grid() == grid_)) throw StructuralError("field grid does not match the stepper");
    const double mass = field.mass();
    lu_.solve_in_place(field.values());
    restore_mass(field, mass);
}

double transport_cfl_limit(const Grid& grid, const ModelParams& params) {
    double fastest = 0.0;
    for (std::size_t j = 0; j < grid.n_g(); ++j)
        for (std::size_t i = 0; i <= grid.n_v(); ++i)
            fastest = std::max(fastest, std::abs(flux_v(params, grid.v_face(i), grid.g_center(j))));
    return grid.dv() / fastest;
}

LieSplitStepper::LieSplitStepper(const Generator& transport, const Generator& fokker_planck, double dt)
    : grid_(transport.grid), dt_(dt), transport_(transport.matrix) {
    if (!(dt > 0.0)) throw ConfigError("dt must be positive");
    const double cfl = transport_cfl_limit(grid_, transport.params);
    if (dt > cfl)
        throw ConfigError("lie-split dt = " + std::to_string(dt) + " exceeds the transport CFL limit " +
                          std::to_string(cfl));

    // Every v-column carries the same tridiagonal block; read it off column 0.
    const std::size_t ng = grid_.n_g();
    const SparseMatrix& fp = fokker_planck.matrix;
    sub_.assign(ng, 0.0);
    diag_.assign(ng, 1.0);
    sup_.assign(ng, 0.0);
    for (std::size_t j = 0; j < ng; ++j) {
        const auto k = static_cast<Eigen::Index>(grid_.flat_index(0, j));
        diag_[j] -= dt * fp.coeff(k, k);
        if (j > 0) sub_[j] = -dt * fp.coeff(k, static_cast<Eigen::Index>(grid_.flat_index(0, j - 1)));
        if (j + 1 < ng) sup_[j] = -dt * fp.coeff(k, static_cast<Eigen::Index>(grid_.flat_index(0, j + 1)));
    }
    // Thomas factorization without pivoting: diag_ becomes the U pivots,
    // sub_ the L multipliers.
    for (std::size_t j = 1; j < ng; ++j) {
        sub_[j] /= diag_[j - 1];
        diag_[j] -= sub_[j] * sup_[j - 1];
        if (!(diag_[j] > 0.0)) throw SolverError("non-positive pivot in the Fokker-Planck substep");
    }
}

void LieSplitStepper::step_in_place(DensityField& field) const {
    if (!(field.grid() == grid_)) throw StructuralError("field grid does not match the stepper");
    const double mass = field.mass();
    const std::size_t nv = grid_.n_v();
    const std::size_t ng = grid_.n_g();
    std::span<double> p = field.values();
    for (std::size_t i = 0; i < nv; ++i) {
        for (std::size_t j = 1; j < ng; ++j) p[j * nv + i] -= sub_[j] * p[(j - 1) * nv + i];
        p[(ng - 1) * nv + i] /= diag_[ng - 1];
        for (std::size_t j = ng - 1; j-- > 0;)
            p[j * nv + i] = (p[j * nv + i] - sup_[j] * p[(j + 1) * nv + i]) / diag_[j];
    }
    const Eigen::Map<const Eigen::VectorXd> x(p.data(), static_cast<Eigen::Index>(p.size()));
    const Eigen::VectorXd rate = transport_ * x;
    for (std::size_t k = 0; k < p.size(); ++k) p[k] += dt_ * rate[static_cast<Eigen::Index>(k)];
    restore_mass(field, mass);
}

DensityField step_implicit(const Generator& generator, const DensityField& field, double dt) {
    return ImplicitStepper(generator, dt).step(field);
}

DensityField step_lie_split(const Generator& transport, const Generator& fokker_planck, const DensityField& field,
                            double dt) {
    return LieSplitStepper(transport, fokker_planck, dt).step(field);
}

std::unique_ptr<Stepper> make_stepper(const GeneratorSet& generators, const EvolveConfig& config) {
    config.validate();
    if (config.scheme == Scheme::LieSplit)
        return std::make_unique<LieSplitStepper>(generators.transport, generators.fokker_planck, config.dt);
    return std::make_unique<ImplicitStepper>(generators.full, config.dt);
}

EvolveResult evolve_run(const Stepper& stepper, const DensityField& initial, const EvolveConfig& config,
                        const Observer& observe) {
    config.validate();
    if (std::abs(stepper.dt() - config.dt) > 1e-15 * config.dt)
        throw ConfigError("stepper and run configuration disagree on dt");
    const std::size_t steps = config.step_count();
    EvolveResult result{{}, initial};
    result.series.push_back(observe(0, 0.0, result.final_field));
    for (std::size_t n = 1; n <= steps; ++n) {
        stepper.step_in_place(result.final_field);
        if (n % config.snapshot_stride == 0 || n == steps)
            result.series.push_back(observe(n, static_cast<double>(n) * stepper.dt(), result.final_field));
    }
    return result;
}

} // namespace vcfp

#include "vcfp/initial.hpp"

#include "vcfp/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace vcfp {

DensityField uniform_initial(const Grid& grid) {
    DensityField p(grid, 1.0);
    p.normalize();
    return p;
}

DensityField indicator_initial(const Grid& grid, const Rectangle& region) {
    DensityField p(grid, 0.0);
    for (std::size_t j = 0; j < grid.n_g(); ++j)
        for (std::size_t i = 0; i < grid.n_v(); ++i)
            if (region.contains(grid.v_center(i), grid.g_center(j))) p(i, j) = 1.0;
    if (p.max() == 0.0) throw ConfigError("initial rectangle contains no cell center");
    p.normalize();
    return p;
}

DensityField maxwellian_bump_initial(const Grid& grid, const ModelParams& params, double v0, double width) {
    if (!(width > 0.0)) throw ConfigError("bump width must be positive");
    DensityField p(grid, 0.0);
    for (std::size_t j = 0; j < grid.n_g(); ++j) {
        const double m = maxwellian(params, grid.g_center(j));
        for (std::size_t i = 0; i < grid.n_v(); ++i) {
            const double d = (grid.v_center(i) - v0) / width;
            p(i, j) = m * std::exp(-0.5 * d * d);
        }
    }
    p.normalize();
    return p;
}

DensityField rectangle_envelope_initial(const DensityField& steady, const Rectangle& region, double c_plus) {
    if (!(c_plus > 1.0)) throw ConfigError("envelope constant must exceed 1");
    const Grid& grid = steady.grid();
    std::vector<char> inside(grid.size(), 0);
    double inside_mass = 0.0;
    for (std::size_t j = 0; j < grid.n_g(); ++j)
        for (std::size_t i = 0; i < grid.n_v(); ++i)
            if (region.contains(grid.v_center(i), grid.g_center(j))) {
                inside[grid.flat_index(i, j)] = 1;
                inside_mass += steady(i, j) * grid.cell_area();
            }
    if (inside_mass == 0.0) throw ConfigError("initial rectangle contains no cell center");
    if (c_plus * inside_mass > 1.0)
        throw ConfigError("rectangle carries p*-mass " + std::to_string(inside_mass) + " > 1/C+ = " +
                          std::to_string(1.0 / c_plus));
    const double outside = (1.0 - c_plus * inside_mass) / (1.0 - inside_mass);
    DensityField p(grid, 0.0);
    for (std::size_t k = 0; k < grid.size(); ++k) p[k] = (inside[k] ? c_plus : outside) * steady[k];
    return p;
}

DensityField envelope_sample(const DensityField& steady, double c_plus, std::mt19937_64& rng) {
    if (!(c_plus > 1.0)) throw ConfigError("envelope constant must exceed 1");
    const Grid& grid = steady.grid();
    const double area = grid.cell_area();
    std::vector<std::size_t> order(grid.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::shuffle(order.begin(), order.end(), rng);

    std::vector<char> top(grid.size(), 0);
    double top_mass = 0.0;
    const double budget = 0.5 / c_plus;
    for (std::size_t k : order) {
        const double m = steady[k] * area;
        if (top_mass + m <= budget) {
            top[k] = 1;
            top_mass += m;
        }
    }

    std::uniform_real_distribution<double> unit(0.5, 1.0);
    std::vector<double> h(grid.size(), c_plus);
    double rest = 0.0;
    for (std::size_t k = 0; k < grid.size(); ++k) {
        if (top[k]) continue;
        h[k] = unit(rng);
        rest += h[k] * steady[k] * area;
    }
    const double lambda = (1.0 - c_plus * top_mass) / rest;
    DensityField p(grid, 0.0);
    for (std::size_t k = 0; k < grid.size(); ++k) {
        const double hk = top[k] ? c_plus : std::min(lambda * h[k], c_plus);
        p[k] = hk * steady[k];
    }
    return p;
}

double initial_regularity_constant(const Generator& generator, const DensityField& initial,
                                   const DensityField& steady) {
    const std::vector<double> rate = apply(generator, initial);
    double c = 0.0;
    for (std::size_t k = 0; k < rate.size(); ++k) c = std::max(c, std::abs(rate[k]) / steady[k]);
    return c;
}

} // namespace vcfp

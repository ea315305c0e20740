#pragma once

#include "vcfp/density.hpp"
#include "vcfp/operators.hpp"

#include <cstdint>
#include <random>

namespace vcfp {

/// Axis-aligned region of phase space; a cell belongs to it when its center does.
struct Rectangle {
    double v_lo = 0.0;
    double v_hi = 0.0;
    double g_lo = 0.0;
    double g_hi = 0.0;

    bool contains(double v, double g) const { return v >= v_lo && v <= v_hi && g >= g_lo && g <= g_hi; }
};

DensityField uniform_initial(const Grid& grid);

/// Normalized indicator of the cells whose centers lie in the rectangle.
DensityField indicator_initial(const Grid& grid, const Rectangle& region);

/// M(g) times a Gaussian bump in v centred at v0 with width w, normalized.
DensityField maxwellian_bump_initial(const Grid& grid, const ModelParams& params, double v0, double width);

/// p0 = c_plus p* on the rectangle and c p* elsewhere, with c >= 0 chosen for
/// unit mass. The envelope constant of p0 is therefore exactly c_plus. Throws
/// ConfigError when the p*-mass of the rectangle exceeds 1 / c_plus.
DensityField rectangle_envelope_initial(const DensityField& steady, const Rectangle& region, double c_plus);

/// Random density with p0 <= c_plus p* and max p0/p* == c_plus.
///
/// A random subset of cells with p*-mass at most 1/(2 c_plus) gets h = c_plus;
/// the remaining cells get h = lambda u with u uniform in [0.5, 1] and lambda
/// fixing the mass.
DensityField envelope_sample(const DensityField& steady, double c_plus, std::mt19937_64& rng);

/// max over cells of |A p0| / p*, the constant of the initial regularity
/// hypothesis used for the long-time argument. Reported, not enforced.
double initial_regularity_constant(const Generator& generator, const DensityField& initial,
                                   const DensityField& steady);

} // namespace vcfp

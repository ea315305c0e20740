#include "vcfp/grid.hpp"

#include "vcfp/errors.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace vcfp {

Grid::Grid(std::size_t n_v, std::size_t n_g, double v_max, double g_max)
    : n_v_(n_v), n_g_(n_g), v_max_(v_max), g_max_(g_max),
      dv_(v_max / static_cast<double>(n_v)), dg_(g_max / static_cast<double>(n_g)) {
    if (n_v < 8 || n_g < 8)
        throw ConfigError("grid needs at least 8 cells in each direction");
    if (!(v_max > 0.0) || !(g_max > 0.0) || !std::isfinite(v_max) || !std::isfinite(g_max))
        throw ConfigError("grid extents must be positive and finite");
}

std::size_t Grid::flat_index(std::size_t i, std::size_t j) const {
    if (i >= n_v_ || j >= n_g_)
        throw std::out_of_range("cell (" + std::to_string(i) + ", " + std::to_string(j) + ") outside grid");
    return j * n_v_ + i;
}

std::pair<std::size_t, std::size_t> Grid::cell_of(std::size_t k) const {
    if (k >= size())
        throw std::out_of_range("flat index " + std::to_string(k) + " outside grid");
    return {k % n_v_, k / n_v_};
}

Grid build_grid(const ModelParams& params, std::size_t n_v, std::size_t n_g, double tail_widths) {
    params.validate();
    if (!(tail_widths >= 8.0))
        throw ConfigError("tail_widths must be at least 8");
    const double g_max = params.g_in + tail_widths * std::sqrt(params.a);
    const double gF = g_threshold(params);
    if (!(g_max > gF))
        throw ConfigError("G_max = " + std::to_string(g_max) + " does not exceed g_F = " + std::to_string(gF));
    return Grid(n_v, n_g, params.V_F, g_max);
}

std::size_t threshold_face_index(const Grid& grid, const ModelParams& params) {
    const double ratio = g_threshold(params) / grid.dg();
    const double nearest = std::round(ratio);
    if (std::abs(ratio - nearest) <= 1e-9 * std::max(1.0, ratio))
        return static_cast<std::size_t>(nearest);
    return static_cast<std::size_t>(std::floor(ratio));
}

} // namespace vcfp

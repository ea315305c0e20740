#pragma once

#include "vcfp/model.hpp"

#include <cstddef>
#include <utility>

namespace vcfp {

/// Uniform tensor mesh over (0, V_F) x (0, G_max).
///
/// Cells are indexed (i, j) with i along v and j along g. The flat index is
/// g-row major: k = j * n_v + i, so each g-row is a contiguous block.
class Grid {
public:
    Grid(std::size_t n_v, std::size_t n_g, double v_max, double g_max);

    std::size_t n_v() const { return n_v_; }
    std::size_t n_g() const { return n_g_; }
    std::size_t size() const { return n_v_ * n_g_; }
    double v_max() const { return v_max_; }
    double g_max() const { return g_max_; }
    double dv() const { return dv_; }
    double dg() const { return dg_; }
    double cell_area() const { return dv_ * dg_; }

    double v_center(std::size_t i) const { return (static_cast<double>(i) + 0.5) * dv_; }
    double g_center(std::size_t j) const { return (static_cast<double>(j) + 0.5) * dg_; }
    /// Face v_{i-1/2}; i ranges over [0, n_v].
    double v_face(std::size_t i) const { return static_cast<double>(i) * dv_; }
    /// Face g_{j-1/2}; j ranges over [0, n_g].
    double g_face(std::size_t j) const { return static_cast<double>(j) * dg_; }

    std::size_t flat_index(std::size_t i, std::size_t j) const;
    std::pair<std::size_t, std::size_t> cell_of(std::size_t k) const;

    bool operator==(const Grid&) const = default;

private:
    std::size_t n_v_;
    std::size_t n_g_;
    double v_max_;
    double g_max_;
    double dv_;
    double dg_;
};

/// Builds the mesh with G_max = g_in + tail_widths * sqrt(a) and checks that
/// both flux regimes at v = V_F are present.
Grid build_grid(const ModelParams& params, std::size_t n_v, std::size_t n_g, double tail_widths = 8.0);

/// Index of the first g-face at or above g_F, i.e. the j with
/// g_face(j) <= g_F < g_face(j + 1) rounded to the nearest face when g_F
/// sits on one within round-off.
std::size_t threshold_face_index(const Grid& grid, const ModelParams& params);

} // namespace vcfp

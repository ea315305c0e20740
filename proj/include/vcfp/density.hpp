#pragma once

#include "vcfp/grid.hpp"

#include <span>
#include <vector>

namespace vcfp {

/// Cell-averaged density on a Grid, stored in the grid's flat order.
class DensityField {
public:
    explicit DensityField(const Grid& grid, double fill = 0.0);
    DensityField(const Grid& grid, std::vector<double> values);

    const Grid& grid() const { return grid_; }
    std::size_t size() const { return values_.size(); }

    double& operator()(std::size_t i, std::size_t j) { return values_[grid_.flat_index(i, j)]; }
    double operator()(std::size_t i, std::size_t j) const { return values_[grid_.flat_index(i, j)]; }
    double& operator[](std::size_t k) { return values_[k]; }
    double operator[](std::size_t k) const { return values_[k]; }

    std::span<const double> values() const { return values_; }
    std::span<double> values() { return values_; }

    /// Midpoint-rule mass sum p_ij dv dg.
    double mass() const;
    double max() const;
    double min() const;

    /// Scales in place so that mass() == 1. Throws StructuralError for
    /// non-positive or non-finite mass.
    void normalize();

private:
    Grid grid_;
    std::vector<double> values_;
};

} // namespace vcfp

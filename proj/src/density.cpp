#include "vcfp/density.hpp"

#include "vcfp/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace vcfp {

DensityField::DensityField(const Grid& grid, double fill) : grid_(grid), values_(grid.size(), fill) {}

DensityField::DensityField(const Grid& grid, std::vector<double> values)
    : grid_(grid), values_(std::move(values)) {
    if (values_.size() != grid_.size())
        throw StructuralError("density values do not match grid size");
}

double DensityField::mass() const {
    return std::accumulate(values_.begin(), values_.end(), 0.0) * grid_.cell_area();
}

double DensityField::max() const { return *std::max_element(values_.begin(), values_.end()); }

double DensityField::min() const { return *std::min_element(values_.begin(), values_.end()); }

void DensityField::normalize() {
    const double m = mass();
    if (!(m > 0.0) || !std::isfinite(m))
        throw StructuralError("cannot normalize a density with non-positive mass");
    for (double& x : values_) x /= m;
}

} // namespace vcfp

#include "vcfp/operators.hpp"

#include "vcfp/errors.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <ostream>

namespace vcfp {

namespace {

using Triplets = std::vector<Eigen::Triplet<double>>;

SparseMatrix from_triplets(std::size_t n, const Triplets& triplets) {
    const auto dim = static_cast<Eigen::Index>(n);
    SparseMatrix m(dim, dim);
    m.setFromTriplets(triplets.begin(), triplets.end());
    m.makeCompressed();
    return m;
}

void add(Triplets& t, std::size_t row, std::size_t col, double value) {
    if (value != 0.0)
        t.emplace_back(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(col), value);
}

} // namespace

double bernoulli(double x) {
    if (std::abs(x) < 1e-10) return 1.0 - 0.5 * x;
    return x / std::expm1(x);
}

Generator assemble_transport_v(const Grid& grid, const ModelParams& params) {
    const std::size_t nv = grid.n_v();
    const double inv_dv = 1.0 / grid.dv();
    const double gF = g_threshold(params);

    Triplets t;
    t.reserve(3 * grid.size() + grid.n_g());
    for (std::size_t j = 0; j < grid.n_g(); ++j) {
        const double g = grid.g_center(j);
        // Interior faces v_{i+1/2} between cells i and i+1.
        for (std::size_t i = 0; i + 1 < nv; ++i) {
            const double J = flux_v(params, grid.v_face(i + 1), g);
            const std::size_t left = grid.flat_index(i, j);
            const std::size_t right = grid.flat_index(i + 1, j);
            if (J > 0.0) {
                const double c = J * inv_dv;
                add(t, left, left, -c);
                add(t, right, left, c);
            } else if (J < 0.0) {
                const double c = -J * inv_dv;
                add(t, right, right, -c);
                add(t, left, right, c);
            }
        }
        if (g > gF) {
            // Outflow at V_F re-enters at v = 0 in the same row.
            const double c = flux_v(params, grid.v_max(), g) * inv_dv;
            const std::size_t last = grid.flat_index(nv - 1, j);
            const std::size_t first = grid.flat_index(0, j);
            add(t, last, last, -c);
            add(t, first, last, c);
        }
    }
    return Generator{grid, params, from_triplets(grid.size(), t)};
}

Generator assemble_fokker_planck_g(const Grid& grid, const ModelParams& params) {
    const double dg = grid.dg();
    const double scale = params.a / params.sigma_E / (dg * dg);

    Triplets t;
    t.reserve(4 * grid.size());
    for (std::size_t j = 0; j + 1 < grid.n_g(); ++j) {
        // Potential jump phi_{j+1} - phi_j for phi = (g - g_in)^2 / (2a).
        const double delta =
            dg * (grid.g_center(j) + grid.g_center(j + 1) - 2.0 * params.g_in) / (2.0 * params.a);
        const double lower = scale * bernoulli(delta);   // W / M_j
        const double upper = scale * bernoulli(-delta);  // W / M_{j+1}
        for (std::size_t i = 0; i < grid.n_v(); ++i) {
            const std::size_t k0 = grid.flat_index(i, j);
            const std::size_t k1 = grid.flat_index(i, j + 1);
            add(t, k0, k0, -lower);
            add(t, k1, k0, lower);
            add(t, k1, k1, -upper);
            add(t, k0, k1, upper);
        }
    }
    return Generator{grid, params, from_triplets(grid.size(), t)};
}

Generator assemble_full(const Grid& grid, const ModelParams& params) {
    Generator transport = assemble_transport_v(grid, params);
    const Generator fp = assemble_fokker_planck_g(grid, params);
    transport.matrix += fp.matrix;
    transport.matrix.makeCompressed();
    return transport;
}

std::vector<double> apply(const Generator& generator, std::span<const double> field) {
    if (field.size() != generator.dimension())
        throw StructuralError("generator and field dimensions differ");
    const Eigen::Map<const Eigen::VectorXd> x(field.data(), static_cast<Eigen::Index>(field.size()));
    std::vector<double> out(field.size());
    Eigen::Map<Eigen::VectorXd>(out.data(), static_cast<Eigen::Index>(out.size())) = generator.matrix * x;
    return out;
}

std::vector<double> apply(const Generator& generator, const DensityField& field) {
    if (!(field.grid() == generator.grid))
        throw StructuralError("field lives on a different grid than the generator");
    return apply(generator, field.values());
}

double firing_flux(const DensityField& field, const ModelParams& params) {
    const Grid& grid = field.grid();
    const double gF = g_threshold(params);
    double total = 0.0;
    for (std::size_t j = 0; j < grid.n_g(); ++j) {
        const double g = grid.g_center(j);
        if (g > gF) total += flux_v(params, grid.v_max(), g) * field(grid.n_v() - 1, j);
    }
    return total * grid.dg();
}

StructureReport inspect_structure(const Generator& generator) {
    const SparseMatrix& m = generator.matrix;
    StructureReport r;
    for (Eigen::Index col = 0; col < m.outerSize(); ++col) {
        double sum = 0.0;
        std::size_t nnz = 0;
        for (SparseMatrix::InnerIterator it(m, col); it; ++it) {
            sum += it.value();
            ++nnz;
            if (it.row() == it.col())
                r.max_abs_diagonal = std::max(r.max_abs_diagonal, std::abs(it.value()));
            else
                r.min_off_diagonal = std::min(r.min_off_diagonal, it.value());
        }
        r.max_abs_column_sum = std::max(r.max_abs_column_sum, std::abs(sum));
        r.max_column_nonzeros = std::max(r.max_column_nonzeros, nnz);
    }
    return r;
}

void write_coordinate_text(const Generator& generator, std::ostream& out) {
    const SparseMatrix& m = generator.matrix;
    const auto old_precision = out.precision(17);
    for (Eigen::Index col = 0; col < m.outerSize(); ++col)
        for (SparseMatrix::InnerIterator it(m, col); it; ++it)
            out << it.row() << ' ' << it.col() << ' ' << it.value() << '\n';
    out.precision(old_precision);
}

} // namespace vcfp

#pragma once

#include "vcfp/density.hpp"
#include "vcfp/grid.hpp"
#include "vcfp/model.hpp"

#include <Eigen/SparseCore>

#include <iosfwd>
#include <limits>
#include <vector>

namespace vcfp {

using SparseMatrix = Eigen::SparseMatrix<double>;

/// Discrete generator A of dp/dt = A p on the grid's flat index space.
///
/// A is a Metzler matrix with zero column sums: exp(tA) is a
/// column-stochastic, positivity-preserving semigroup.
struct Generator {
    Grid grid;
    ModelParams params;
    SparseMatrix matrix;

    std::size_t dimension() const { return grid.size(); }
};

/// First-order upwind discretization of -d/dv [J_v p] on every g-row.
///
/// Rows with g_j > g_F re-enter the outflow at v = V_F through the v = 0
/// face of the same row. Rows with g_j <= g_F have closed boundary faces.
Generator assemble_transport_v(const Grid& grid, const ModelParams& params);

/// Scharfetter-Gummel discretization of (a/sigma_E) d/dg [M d/dg (p/M)] on
/// every v-column with zero-flux faces at g = 0 and g = G_max.
///
/// The interior face flux is (a/sigma_E)/dg * W (p_j/M_j - p_{j+1}/M_{j+1})
/// with W = M_j M_{j+1} / L(M_j, M_{j+1}) and L the logarithmic mean, so
/// M(g_j) is in the kernel of each column block.
Generator assemble_fokker_planck_g(const Grid& grid, const ModelParams& params);

/// Transport plus Fokker-Planck.
Generator assemble_full(const Grid& grid, const ModelParams& params);

/// Matrix-vector product. Throws StructuralError on dimension mismatch.
std::vector<double> apply(const Generator& generator, std::span<const double> field);
std::vector<double> apply(const Generator& generator, const DensityField& field);

/// Total reinjected flux: sum over g-rows with g_j > g_F of J_v(V_F, g_j) p_{n_v-1, j} dg.
double firing_flux(const DensityField& field, const ModelParams& params);

/// Coefficient of the Scharfetter-Gummel flux: B(x) = x / (exp(x) - 1), B(0) = 1.
double bernoulli(double x);

struct StructureReport {
    double min_off_diagonal = std::numeric_limits<double>::infinity();
    double max_abs_column_sum = 0.0;
    double max_abs_diagonal = 0.0;
    std::size_t max_column_nonzeros = 0;
};

StructureReport inspect_structure(const Generator& generator);

/// One "row col value" line per stored entry, zero-based indices.
void write_coordinate_text(const Generator& generator, std::ostream& out);

} // namespace vcfp

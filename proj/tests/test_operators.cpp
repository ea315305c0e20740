#include "vcfp/errors.hpp"
#include "vcfp/operators.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

using namespace vcfp;

namespace {

double entry(const Generator& gen, std::size_t row, std::size_t col) { return gen.matrix.coeff(row, col); }

std::vector<double> dense_apply(const Generator& gen, const std::vector<double>& x) {
    const std::size_t n = gen.dimension();
    std::vector<double> y(n, 0.0);
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c) y[r] += entry(gen, r, c) * x[c];
    return y;
}

double max_abs(const std::vector<double>& x) {
    double m = 0.0;
    for (double v : x) m = std::max(m, std::abs(v));
    return m;
}

double log_mean(double x, double y) { return x == y ? x : (x - y) / (std::log(x) - std::log(y)); }

// Scharfetter-Gummel face weight.
double face_weight(double x, double y) { return x * y / log_mean(x, y); }

} // namespace

TEST_CASE("bernoulli function") {
    CHECK(bernoulli(0.0) == 1.0);
    CHECK(bernoulli(1e-12) == doctest::Approx(1.0 - 0.5e-12).epsilon(1e-15));
    CHECK(bernoulli(1.0) == doctest::Approx(1.0 / (std::exp(1.0) - 1.0)).epsilon(1e-15));
    for (double x = -5.0; x <= 5.0; x += 0.37) CHECK(bernoulli(-x) - bernoulli(x) == doctest::Approx(x).epsilon(1e-13));
}

TEST_CASE("transport columns match hand-computed upwind fluxes") {
    const ModelParams p;
    const Grid grid = build_grid(p, 8, 18);  // dv = 1/8, dg = 1/2
    const Generator t = assemble_transport_v(grid, p);

    // Interior cell, g = 1.75: J(1/8, 1.75) / dv = 25.25 moves right.
    const std::size_t a = grid.flat_index(0, 3), b = grid.flat_index(1, 3);
    CHECK(entry(t, a, a) == doctest::Approx(-25.25).epsilon(1e-14));
    CHECK(entry(t, b, a) == doctest::Approx(25.25).epsilon(1e-14));

    // Boundary cell above g_F: J(1, 1.75) / dv = 6 is reinjected at v = 0.
    const std::size_t last = grid.flat_index(7, 3);
    CHECK(entry(t, last, last) == doctest::Approx(-6.0).epsilon(1e-14));
    CHECK(entry(t, a, last) == doctest::Approx(6.0).epsilon(1e-14));

    // Boundary cell below g_F: closed at V_F, J(7/8, 0.75) / dv = -0.25 moves left.
    const std::size_t c = grid.flat_index(7, 1), d = grid.flat_index(6, 1);
    CHECK(entry(t, c, c) == doctest::Approx(-0.25).epsilon(1e-14));
    CHECK(entry(t, d, c) == doctest::Approx(0.25).epsilon(1e-14));
    CHECK(entry(t, grid.flat_index(0, 1), c) == 0.0);

    // No coupling across g-rows.
    for (int k = 0; k < t.matrix.outerSize(); ++k)
        for (SparseMatrix::InnerIterator it(t.matrix, k); it; ++it)
            CHECK(grid.cell_of(static_cast<std::size_t>(it.row())).second ==
                  grid.cell_of(static_cast<std::size_t>(it.col())).second);
}

TEST_CASE("transport annihilates the constant-flux profile above g_F") {
    const ModelParams p;
    const Grid grid = build_grid(p, 32, 36);
    const Generator t = assemble_transport_v(grid, p);
    std::vector<double> q(grid.size(), 0.0);
    for (std::size_t j = 0; j < grid.n_g(); ++j) {
        if (grid.g_center(j) <= g_threshold(p)) continue;
        for (std::size_t i = 0; i < grid.n_v(); ++i)
            q[grid.flat_index(i, j)] = 1.0 / flux_v(p, grid.v_face(i + 1), grid.g_center(j));
    }
    const std::vector<double> r = vcfp::apply(t, q);
    CHECK(max_abs(r) < 1e-12 * max_abs(q) / grid.dv());
}

TEST_CASE("Fokker-Planck operator equals the exponentially fitted tridiagonal oracle") {
    ModelParams p;
    p.a = 0.7;
    p.sigma_E = 1.3;
    const Grid grid = build_grid(p, 8, 24);
    const Generator fp = assemble_fokker_planck_g(grid, p);
    const double dg = grid.dg();
    const double scale = p.a / p.sigma_E / (dg * dg);
    double worst = 0.0;
    for (std::size_t i = 0; i < grid.n_v(); ++i) {
        for (std::size_t j = 0; j < grid.n_g(); ++j) {
            const double mj = maxwellian(p, grid.g_center(j));
            double diag = 0.0;
            const std::size_t col = grid.flat_index(i, j);
            if (j + 1 < grid.n_g()) {
                const double w = face_weight(mj, maxwellian(p, grid.g_center(j + 1)));
                diag -= scale * w / mj;
                const double expected = scale * w / mj;
                worst = std::max(worst, std::abs(entry(fp, grid.flat_index(i, j + 1), col) - expected) / expected);
            }
            if (j > 0) {
                const double w = face_weight(mj, maxwellian(p, grid.g_center(j - 1)));
                diag -= scale * w / mj;
                const double expected = scale * w / mj;
                worst = std::max(worst, std::abs(entry(fp, grid.flat_index(i, j - 1), col) - expected) / expected);
            }
            worst = std::max(worst, std::abs(entry(fp, col, col) - diag) / std::abs(diag));
        }
    }
    CHECK(worst < 1e-12);
}

TEST_CASE("Fokker-Planck kernel is the sampled Maxwellian") {
    for (double a : {0.25, 0.5, 1.0}) {
        ModelParams p;
        p.a = a;
        for (std::size_t n : {16u, 32u, 64u}) {
            const Grid grid = build_grid(p, n, n);
            const Generator fp = assemble_fokker_planck_g(grid, p);
            std::vector<double> m(grid.size());
            double mmax = 0.0;
            for (std::size_t k = 0; k < grid.size(); ++k) {
                m[k] = maxwellian(p, grid.g_center(grid.cell_of(k).second));
                mmax = std::max(mmax, m[k]);
            }
            CHECK(max_abs(vcfp::apply(fp, m)) <= 1e-13 * mmax);
        }
    }
}

TEST_CASE("full generator is Metzler with zero column sums") {
    const ModelParams p;
    for (std::size_t n : {16u, 32u, 64u}) {
        const Grid grid = build_grid(p, n, n);
        const StructureReport s = inspect_structure(assemble_full(grid, p));
        CHECK(s.min_off_diagonal >= 0.0);
        CHECK(s.max_abs_column_sum <= 1e-12);
        CHECK(s.max_column_nonzeros <= 5);
    }
}

TEST_CASE("full action on M(g) 1_v equals the transport action") {
    const ModelParams p;
    const Grid grid = build_grid(p, 16, 16);
    const Generator full = assemble_full(grid, p);
    const Generator t = assemble_transport_v(grid, p);
    std::vector<double> m(grid.size());
    for (std::size_t k = 0; k < grid.size(); ++k) m[k] = maxwellian(p, grid.g_center(grid.cell_of(k).second));
    const std::vector<double> a = vcfp::apply(full, m);
    const std::vector<double> b = vcfp::apply(t, m);
    double scale = max_abs(b);
    for (std::size_t k = 0; k < a.size(); ++k) CHECK(std::abs(a[k] - b[k]) <= 1e-13 * scale);
}

TEST_CASE("apply agrees with a dense product and checks dimensions") {
    const ModelParams p;
    const Grid grid = build_grid(p, 8, 8);
    const Generator full = assemble_full(grid, p);
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::vector<double> x(grid.size());
    for (double& v : x) v = u(rng);
    const std::vector<double> y = vcfp::apply(full, x);
    const std::vector<double> z = dense_apply(full, x);
    for (std::size_t k = 0; k < y.size(); ++k) CHECK(y[k] == doctest::Approx(z[k]).epsilon(1e-13));
    std::vector<double> bad(grid.size() + 1, 0.0);
    CHECK_THROWS_AS(vcfp::apply(full, bad), StructuralError);
}

TEST_CASE("firing flux") {
    const ModelParams p;
    const Grid grid = build_grid(p, 16, 18);
    DensityField field(grid, 1.0);
    double expected = 0.0;
    for (std::size_t j = 0; j < grid.n_g(); ++j)
        if (grid.g_center(j) > g_threshold(p)) expected += flux_v(p, 1.0, grid.g_center(j)) * grid.dg();
    CHECK(firing_flux(field, p) == doctest::Approx(expected).epsilon(1e-14));

    DensityField low(grid, 0.0);
    for (std::size_t i = 0; i < grid.n_v(); ++i) low(i, 0) = low(i, 1) = 1.0;
    CHECK(firing_flux(low, p) == 0.0);
}

TEST_CASE("coordinate dump lists every stored entry") {
    const ModelParams p;
    const Generator full = assemble_full(build_grid(p, 8, 8), p);
    std::ostringstream out;
    write_coordinate_text(full, out);
    std::istringstream in(out.str());
    std::size_t lines = 0;
    long row = 0, col = 0;
    double value = 0.0;
    while (in >> row >> col >> value) {
        CHECK(value == full.matrix.coeff(row, col));
        ++lines;
    }
    CHECK(lines == static_cast<std::size_t>(full.matrix.nonZeros()));
}

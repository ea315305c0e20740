#include "vcfp/banded_lu.hpp"
#include "vcfp/errors.hpp"

#include <Eigen/Dense>
#include <doctest.h>

#include <random>

using namespace vcfp;

TEST_CASE("banded LU agrees with a dense solve on a shifted generator") {
    const ModelParams p;
    const Grid grid = build_grid(p, 8, 8);
    const Generator full = assemble_full(grid, p);
    const SparseMatrix m = shifted_system(full.matrix, 1.0, 0.3);
    const BandedLu lu(m);
    CHECK(lu.dimension() == 64);
    CHECK(lu.lower_bandwidth() <= 8);
    CHECK(lu.upper_bandwidth() <= 8);

    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    Eigen::VectorXd b(64);
    for (Eigen::Index k = 0; k < 64; ++k) b[k] = u(rng);
    const Eigen::MatrixXd dense(m);
    const Eigen::VectorXd x_ref = dense.fullPivLu().solve(b);
    const std::vector<double> x = lu.solve(std::span<const double>(b.data(), 64));
    for (Eigen::Index k = 0; k < 64; ++k) CHECK(x[static_cast<std::size_t>(k)] == doctest::Approx(x_ref[k]).epsilon(1e-12));
}

TEST_CASE("M-matrix solves keep nonnegative data nonnegative") {
    const ModelParams p;
    const Grid grid = build_grid(p, 16, 16);
    const Generator full = assemble_full(grid, p);
    for (double dt : {1e-3, 0.1, 10.0, 1e4}) {
        const BandedLu lu(shifted_system(full.matrix, 1.0, dt));
        std::vector<double> e(grid.size(), 0.0);
        for (std::size_t k = 0; k < grid.size(); k += 37) {
            std::fill(e.begin(), e.end(), 0.0);
            e[k] = 1.0;
            const std::vector<double> x = lu.solve(e);
            double sum = 0.0;
            for (double v : x) {
                CHECK(v >= 0.0);
                sum += v;
            }
            // Zero column sums of A make I - dt A preserve sums.
            CHECK(sum == doctest::Approx(1.0).epsilon(1e-10));
        }
    }
}

TEST_CASE("non-positive pivot and size mismatch are reported") {
    SparseMatrix m(3, 3);
    m.insert(0, 0) = 1.0;
    m.insert(1, 1) = 0.0;
    m.insert(2, 2) = 1.0;
    CHECK_THROWS_AS(BandedLu{m}, SolverError);

    SparseMatrix id(3, 3);
    id.setIdentity();
    const BandedLu lu(id);
    std::vector<double> wrong(4, 1.0);
    CHECK_THROWS_AS(lu.solve_in_place(wrong), StructuralError);
}

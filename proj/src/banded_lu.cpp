#include "vcfp/banded_lu.hpp"

#include "vcfp/errors.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace vcfp {

BandedLu::BandedLu(const SparseMatrix& matrix) : n_(static_cast<std::size_t>(matrix.rows())) {
    if (matrix.rows() != matrix.cols())
        throw StructuralError("banded LU needs a square matrix");
    for (Eigen::Index col = 0; col < matrix.outerSize(); ++col) {
        for (SparseMatrix::InnerIterator it(matrix, col); it; ++it) {
            const auto r = static_cast<std::size_t>(it.row());
            const auto c = static_cast<std::size_t>(it.col());
            if (r > c) kl_ = std::max(kl_, r - c);
            else ku_ = std::max(ku_, c - r);
        }
    }
    width_ = kl_ + ku_ + 1;
    band_.assign(n_ * width_, 0.0);
    for (Eigen::Index col = 0; col < matrix.outerSize(); ++col)
        for (SparseMatrix::InnerIterator it(matrix, col); it; ++it)
            at(static_cast<std::size_t>(it.row()), static_cast<std::size_t>(it.col())) += it.value();

    for (std::size_t k = 0; k < n_; ++k) {
        const double pivot = at(k, k);
        if (!(pivot > 0.0) || !std::isfinite(pivot))
            throw SolverError("non-positive pivot " + std::to_string(pivot) + " at row " + std::to_string(k));
        const std::size_t row_end = std::min(n_, k + kl_ + 1);
        const std::size_t col_end = std::min(n_, k + ku_ + 1);
        for (std::size_t r = k + 1; r < row_end; ++r) {
            double& lower = at(r, k);
            if (lower == 0.0) continue;
            lower /= pivot;
            const double l = lower;
            for (std::size_t c = k + 1; c < col_end; ++c) at(r, c) -= l * at(k, c);
        }
    }
}

void BandedLu::solve_in_place(std::span<double> x) const {
    if (x.size() != n_)
        throw StructuralError("right-hand side size does not match the factorization");
    for (std::size_t r = 0; r < n_; ++r) {
        const std::size_t begin = r > kl_ ? r - kl_ : 0;
        double s = x[r];
        for (std::size_t c = begin; c < r; ++c) s -= at(r, c) * x[c];
        x[r] = s;
    }
    for (std::size_t r = n_; r-- > 0;) {
        const std::size_t end = std::min(n_, r + ku_ + 1);
        double s = x[r];
        for (std::size_t c = r + 1; c < end; ++c) s -= at(r, c) * x[c];
        x[r] = s / at(r, r);
    }
}

std::vector<double> BandedLu::solve(std::span<const double> rhs) const {
    std::vector<double> x(rhs.begin(), rhs.end());
    solve_in_place(x);
    return x;
}

SparseMatrix shifted_system(const SparseMatrix& generator, double shift, double scale) {
    SparseMatrix identity(generator.rows(), generator.cols());
    identity.setIdentity();
    SparseMatrix m = shift * identity - scale * generator;
    m.makeCompressed();
    return m;
}

} // namespace vcfp

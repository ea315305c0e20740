#pragma once

#include "vcfp/operators.hpp"

#include <span>
#include <vector>

namespace vcfp {

/// LU factorization of a banded matrix without pivoting.
///
/// Intended for nonsingular M-matrices (sigma I - A, I - dt A with A a
/// Metzler generator). For those, elimination without pivoting is stable and
/// keeps the sign pattern of the factors: L and U have non-positive
/// off-diagonals. Forward and back substitution then only add nonnegative
/// terms, so a nonnegative right-hand side yields a nonnegative solution in
/// floating point.
class BandedLu {
public:
    explicit BandedLu(const SparseMatrix& matrix);

    std::size_t dimension() const { return n_; }
    std::size_t lower_bandwidth() const { return kl_; }
    std::size_t upper_bandwidth() const { return ku_; }

    void solve_in_place(std::span<double> rhs) const;
    std::vector<double> solve(std::span<const double> rhs) const;

private:
    double& at(std::size_t row, std::size_t col) { return band_[row * width_ + (col + kl_ - row)]; }
    double at(std::size_t row, std::size_t col) const { return band_[row * width_ + (col + kl_ - row)]; }

    std::size_t n_ = 0;
    std::size_t kl_ = 0;
    std::size_t ku_ = 0;
    std::size_t width_ = 0;
    std::vector<double> band_;
};

/// Shifted identity minus a generator: shift * I - scale * A.
SparseMatrix shifted_system(const SparseMatrix& generator, double shift, double scale);

} // namespace vcfp

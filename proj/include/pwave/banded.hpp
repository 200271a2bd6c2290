// General banded matrix with LU factorization (partial pivoting), LAPACK
// band-storage layout. Used for two-point BVP solves and spline systems.
#pragma once

#include <vector>

namespace pwave {

class BandedMatrix {
public:
    BandedMatrix() = default;
    BandedMatrix(int n, int kl, int ku);

    int size() const { return n_; }
    double& at(int i, int j);        // |i-j| <= max(kl,ku) enforced
    double at(int i, int j) const;

    void zero();

    // LU-factorizes in place (destroys the matrix) and solves. Subsequent
    // solves reuse the factorization.
    void factor();
    std::vector<double> solve(const std::vector<double>& rhs) const;
    bool factored() const { return factored_; }

private:
    int n_ = 0, kl_ = 0, ku_ = 0;
    // ab_[row*ldab + col] with LAPACK dgbtrf layout: extra kl rows for fill-in.
    std::vector<double> ab_;
    std::vector<int> piv_;
    bool factored_ = false;
    int ldab() const { return 2 * kl_ + ku_ + 1; }
    double& store(int band_row, int j) { return ab_[static_cast<size_t>(j) * ldab() + band_row]; }
    double store(int band_row, int j) const { return ab_[static_cast<size_t>(j) * ldab() + band_row]; }
};

} // namespace pwave

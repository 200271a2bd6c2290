#include "pwave/banded.hpp"

#include <cmath>
#include <stdexcept>

namespace pwave {

BandedMatrix::BandedMatrix(int n, int kl, int ku) : n_(n), kl_(kl), ku_(ku) {
    if (n <= 0 || kl < 0 || ku < 0) throw std::invalid_argument("banded: bad shape");
    ab_.assign(static_cast<size_t>(n) * ldab(), 0.0);
    piv_.assign(n, 0);
}

double& BandedMatrix::at(int i, int j) {
    if (i < 0 || j < 0 || i >= n_ || j >= n_ || i - j > kl_ || j - i > ku_)
        throw std::out_of_range("banded: entry outside band");
    return store(kl_ + ku_ + i - j, j);
}

double BandedMatrix::at(int i, int j) const {
    if (i < 0 || j < 0 || i >= n_ || j >= n_ || i - j > kl_ || j - i > ku_) return 0.0;
    return store(kl_ + ku_ + i - j, j);
}

void BandedMatrix::zero() {
    std::fill(ab_.begin(), ab_.end(), 0.0);
    factored_ = false;
}

// dgbtrf-style LU with partial pivoting restricted to the band.
void BandedMatrix::factor() {
    const int kv = kl_ + ku_; // superdiagonals in the factored form
    for (int j = 0; j < n_; ++j) {
        int pivot_len = std::min(kl_, n_ - 1 - j);
        int best = 0;
        double best_val = std::fabs(store(kv, j));
        for (int i = 1; i <= pivot_len; ++i) {
            double v = std::fabs(store(kv + i, j));
            if (v > best_val) { best_val = v; best = i; }
        }
        piv_[j] = j + best;
        if (best_val == 0.0) throw std::runtime_error("banded LU: singular matrix");
        if (best != 0) {
            int cols = std::min(kv, n_ - 1 - j); // U fill-in spans kl+ku superdiagonals
            for (int c = 0; c <= cols; ++c) {
                int col = j + c;
                std::swap(ab_[static_cast<size_t>(col) * ldab() + (kv - c)],
                          ab_[static_cast<size_t>(col) * ldab() + (kv - c + best)]);
            }
        }
        double pivot = store(kv, j);
        for (int i = 1; i <= pivot_len; ++i) {
            double m = store(kv + i, j) / pivot;
            store(kv + i, j) = m;
            int cols = std::min(kv, n_ - 1 - j);
            for (int c = 1; c <= cols; ++c) {
                int col = j + c;
                ab_[static_cast<size_t>(col) * ldab() + (kv - c + i)] -=
                    m * ab_[static_cast<size_t>(col) * ldab() + (kv - c)];
            }
        }
    }
    factored_ = true;
}

std::vector<double> BandedMatrix::solve(const std::vector<double>& rhs) const {
    if (!factored_) throw std::logic_error("banded solve: factor() first");
    if (static_cast<int>(rhs.size()) != n_) throw std::invalid_argument("banded solve: size");
    std::vector<double> x = rhs;
    const int kv = kl_ + ku_;
    // forward substitution with row swaps
    for (int j = 0; j < n_; ++j) {
        if (piv_[j] != j) std::swap(x[j], x[piv_[j]]);
        int len = std::min(kl_, n_ - 1 - j);
        for (int i = 1; i <= len; ++i) x[j + i] -= store(kv + i, j) * x[j];
    }
    // back substitution
    for (int j = n_ - 1; j >= 0; --j) {
        x[j] /= store(kv, j);
        int len = std::min(kv, j);
        for (int c = 1; c <= len; ++c)
            x[j - c] -= ab_[static_cast<size_t>(j) * ldab() + (kv - c)] * x[j];
    }
    return x;
}

} // namespace pwave
